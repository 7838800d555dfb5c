#pragma once

#include <cmath>
#include <string>

#include "spp/errors.hpp"

namespace spp {

// Edge weight: a non-negative finite real or the explicit infinite value.
// Infinity is a tagged state rather than an IEEE sentinel so arithmetic on it
// is explicit: any sum involving the infinite weight is infinite, subtraction
// from it does not exist, and NaN can never appear. The ordering is total:
// Finite(a) < Finite(b) iff a < b, every finite weight sorts below infinite,
// and infinite compares equal to infinite.
class Weight {
public:
    Weight() : v_(0.0), finite_(true) {}

    static Weight finite(double v) {
        internal_check(!std::isnan(v) && v >= 0.0 && !std::isinf(v),
                       "Weight::finite: value must be a non-negative real");
        Weight w;
        w.v_ = v;
        w.finite_ = true;
        return w;
    }

    static Weight infinite() {
        Weight w;
        w.finite_ = false;
        w.v_ = 0.0;
        return w;
    }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    double value() const {
        internal_check(finite_, "Weight::value: weight is infinite");
        return v_;
    }

    Weight operator+(const Weight& o) const {
        if (!finite_ || !o.finite_) return infinite();
        return finite(v_ + o.v_);
    }

    Weight& operator+=(const Weight& o) {
        *this = *this + o;
        return *this;
    }

    friend bool operator==(const Weight& a, const Weight& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.v_ == b.v_;
    }
    friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }

    friend bool operator<(const Weight& a, const Weight& b) {
        if (a.finite_ && b.finite_) return a.v_ < b.v_;
        return a.finite_ && !b.finite_;
    }
    friend bool operator>(const Weight& a, const Weight& b) { return b < a; }
    friend bool operator<=(const Weight& a, const Weight& b) { return !(b < a); }
    friend bool operator>=(const Weight& a, const Weight& b) { return !(a < b); }

private:
    double v_;
    bool finite_;
};

}  // namespace spp
