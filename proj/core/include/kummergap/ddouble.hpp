#pragma once
#include <cmath>
#include <cstdint>
#include <limits>

namespace kummergap {

// Double-double value: unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving ~32 significant decimal digits.  The series this library sums
// cancels up to ~13 digits in its target regimes, so plain double keeps
// only marginal headroom; double-double restores a comfortable margin.
//
// Compile units using the error-free transforms below must not enable
// value-changing fast-math; explicit std::fma keeps the products exact
// under the default contraction settings.
class DDouble {
    double hi_, lo_;

public:
    constexpr DDouble() : hi_(0.0), lo_(0.0) {}
    constexpr DDouble(double x) : hi_(x), lo_(0.0) {}
    constexpr DDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

    double hi() const { return hi_; }
    double lo() const { return lo_; }
    double as_double() const { return hi_; }
    explicit operator double() const { return hi_; }

    static DDouble quick_two_sum(double a, double b) {
        // requires |a| >= |b| (or a == 0)
        double s = a + b;
        return DDouble(s, b - (s - a));
    }

    static DDouble two_sum(double a, double b) {
        double s = a + b;
        double bb = s - a;
        return DDouble(s, (a - (s - bb)) + (b - bb));
    }

    static DDouble two_prod(double a, double b) {
        double p = a * b;
        return DDouble(p, std::fma(a, b, -p));
    }

    friend DDouble operator+(DDouble x, DDouble y) {
        DDouble s = two_sum(x.hi_, y.hi_);
        DDouble t = two_sum(x.lo_, y.lo_);
        DDouble r = quick_two_sum(s.hi_, s.lo_ + t.hi_);
        return quick_two_sum(r.hi_, r.lo_ + t.lo_);
    }

    friend DDouble operator+(DDouble x, double y) {
        DDouble s = two_sum(x.hi_, y);
        return quick_two_sum(s.hi_, s.lo_ + x.lo_);
    }

    friend DDouble operator+(double x, DDouble y) { return y + x; }

    friend DDouble operator-(DDouble x) { return DDouble(-x.hi_, -x.lo_); }
    friend DDouble operator-(DDouble x, DDouble y) { return x + (-y); }
    friend DDouble operator-(DDouble x, double y) { return x + (-y); }
    friend DDouble operator-(double x, DDouble y) { return DDouble(x) + (-y); }

    friend DDouble operator*(DDouble x, DDouble y) {
        DDouble p = two_prod(x.hi_, y.hi_);
        return quick_two_sum(p.hi_, p.lo_ + (x.hi_ * y.lo_ + x.lo_ * y.hi_));
    }

    friend DDouble operator*(DDouble x, double y) {
        DDouble p = two_prod(x.hi_, y);
        return quick_two_sum(p.hi_, p.lo_ + x.lo_ * y);
    }

    friend DDouble operator*(double x, DDouble y) { return y * x; }

    friend DDouble operator/(DDouble x, DDouble y) {
        double q1 = x.hi_ / y.hi_;
        DDouble r = x - y * q1;
        double q2 = r.hi_ / y.hi_;
        r = r - y * q2;
        double q3 = r.hi_ / y.hi_;
        return quick_two_sum(q1, q2) + q3;
    }

    friend DDouble operator/(DDouble x, double y) { return x / DDouble(y); }
    friend DDouble operator/(double x, DDouble y) { return DDouble(x) / y; }

    DDouble &operator+=(DDouble y) { return *this = *this + y; }
    DDouble &operator+=(double y) { return *this = *this + y; }
    DDouble &operator-=(DDouble y) { return *this = *this - y; }
    DDouble &operator-=(double y) { return *this = *this - y; }
    DDouble &operator*=(DDouble y) { return *this = *this * y; }
    DDouble &operator*=(double y) { return *this = *this * y; }
    DDouble &operator/=(DDouble y) { return *this = *this / y; }
    DDouble &operator/=(double y) { return *this = *this / y; }

    friend bool operator==(DDouble x, DDouble y) { return x.hi_ == y.hi_ && x.lo_ == y.lo_; }
    friend bool operator!=(DDouble x, DDouble y) { return !(x == y); }
    friend bool operator<(DDouble x, DDouble y) {
        return x.hi_ < y.hi_ || (x.hi_ == y.hi_ && x.lo_ < y.lo_);
    }
    friend bool operator>(DDouble x, DDouble y) { return y < x; }
    friend bool operator<=(DDouble x, DDouble y) { return !(y < x); }
    friend bool operator>=(DDouble x, DDouble y) { return !(x < y); }

    // exact scaling by a power of two
    DDouble mul_pwr2(double p) const { return DDouble(hi_ * p, lo_ * p); }
};

inline DDouble abs(DDouble x) { return x.hi() < 0.0 || (x.hi() == 0.0 && x.lo() < 0.0) ? -x : x; }

inline DDouble sqr(DDouble x) {
    DDouble p = DDouble::two_prod(x.hi(), x.hi());
    return DDouble::quick_two_sum(p.hi(), p.lo() + 2.0 * x.hi() * x.lo());
}

inline DDouble sqrt(DDouble a) {
    // one Newton correction from the double seed reaches full precision
    if (a.hi() == 0.0 && a.lo() == 0.0) return DDouble();
    if (a.hi() < 0.0) return DDouble(std::numeric_limits<double>::quiet_NaN());
    double x = 1.0 / std::sqrt(a.hi());
    double ax = a.hi() * x;
    return DDouble(ax) + (a - sqr(DDouble(ax))).hi() * (x * 0.5);
}

namespace detail {
inline constexpr double kLn2Hi = 6.931471805599452862e-01;
inline constexpr double kLn2Lo = 2.319046813846299558e-17;
inline constexpr double kDDEps = 4.93038065763132e-32; // 2^-104
} // namespace detail

inline DDouble exp(DDouble a) {
    // standard reduce-and-square scheme: e^a = 2^m (e^r)^512 with
    // r = (a - m ln 2)/512, Taylor on the tiny remainder
    if (a.hi() <= -709.0) return DDouble();
    if (a.hi() >= 709.0) return DDouble(std::numeric_limits<double>::infinity());
    if (a.hi() == 0.0 && a.lo() == 0.0) return DDouble(1.0);

    double m = std::floor(a.hi() / detail::kLn2Hi + 0.5);
    DDouble r = (a - DDouble(detail::kLn2Hi, detail::kLn2Lo) * m).mul_pwr2(1.0 / 512.0);

    DDouble p = sqr(r);
    DDouble s = r + p.mul_pwr2(0.5);
    double fact = 2.0;
    for (int i = 3; i <= 12; ++i) {
        p *= r;
        fact *= static_cast<double>(i);
        DDouble t = p / fact;
        s += t;
        if (std::fabs(t.hi()) <= detail::kDDEps / 512.0) break;
    }

    for (int i = 0; i < 9; ++i) s = s.mul_pwr2(2.0) + sqr(s); // (1+s)^2 - 1
    s += 1.0;
    int e = static_cast<int>(m);
    return DDouble(std::ldexp(s.hi(), e), std::ldexp(s.lo(), e));
}

inline DDouble log(DDouble a) {
    // Newton iteration x <- x + a e^{-x} - 1 from the double seed; two
    // steps leave a healthy margin over the one QD-style step needs
    if (a.hi() <= 0.0) return DDouble(std::numeric_limits<double>::quiet_NaN());
    DDouble x(std::log(a.hi()));
    x = x + a * exp(-x) - 1.0;
    x = x + a * exp(-x) - 1.0;
    return x;
}

inline DDouble pow(DDouble base, DDouble e) { return exp(e * log(base)); }

inline double to_double(DDouble x) { return x.hi(); }

} // namespace kummergap
