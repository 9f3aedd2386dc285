#include "inlslab/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace inls {

namespace {

std::int64_t igcd(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a == 0 ? 1 : a;
}

std::optional<Ratio> reduce128(__int128 n, __int128 d) {
    if (d == 0) return std::nullopt;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    n /= a;
    d /= a;
    const __int128 lim = std::numeric_limits<std::int64_t>::max();
    if (n > lim || n < -lim || d > lim) return std::nullopt;
    return Ratio(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

Ratio::Ratio(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Ratio: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = igcd(n, d);
    num_ = n / g;
    den_ = d / g;
}

std::optional<Ratio> Ratio::add(const Ratio& a, const Ratio& b) {
    return reduce128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                     (__int128)a.den_ * b.den_);
}

std::optional<Ratio> Ratio::sub(const Ratio& a, const Ratio& b) {
    return reduce128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                     (__int128)a.den_ * b.den_);
}

std::optional<Ratio> Ratio::mul(const Ratio& a, const Ratio& b) {
    return reduce128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
}

std::optional<Ratio> Ratio::div(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) return std::nullopt;
    return reduce128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
}

std::optional<Ratio> Ratio::from_double(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    if (x == std::floor(x) && std::abs(x) < 9e15) {
        return Ratio(static_cast<std::int64_t>(x));
    }
    // Continued-fraction convergents of x; accept the first one that
    // round-trips exactly through double division.
    double v = x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fa = std::floor(v);
        if (std::abs(fa) > 9e15) return std::nullopt;
        std::int64_t a = static_cast<std::int64_t>(fa);
        __int128 p2 = (__int128)a * p1 + p0;
        __int128 q2 = (__int128)a * q1 + q0;
        if (q2 > max_den || p2 > (__int128)9e17 || p2 < -(__int128)9e17) return std::nullopt;
        p0 = p1;
        q0 = q1;
        p1 = static_cast<std::int64_t>(p2);
        q1 = static_cast<std::int64_t>(q2);
        if (q1 > 0 &&
            static_cast<double>(p1) / static_cast<double>(q1) == x) {
            return Ratio(p1, q1);
        }
        double rem = v - fa;
        if (rem < 1e-18) return std::nullopt;
        v = 1.0 / rem;
    }
    return std::nullopt;
}

bool operator<(const Ratio& a, const Ratio& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
}

std::string Ratio::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar::Scalar(double v) {
    inf_ = false;
    if (std::isinf(v) && v > 0) {
        inf_ = true;
        exact_ = true;
        val_ = v;
        return;
    }
    auto r = Ratio::from_double(v);
    if (r) {
        rat_ = *r;
        exact_ = true;
        val_ = v;
    } else {
        exact_ = false;
        val_ = v;
    }
}

Scalar Scalar::infinity() {
    Scalar s;
    s.inf_ = true;
    s.val_ = std::numeric_limits<double>::infinity();
    return s;
}

double Scalar::value() const {
    if (inf_) return std::numeric_limits<double>::infinity();
    return exact_ ? rat_.value() : val_;
}

namespace {
Scalar from_opt(const std::optional<Ratio>& r, double fallback) {
    if (r) return Scalar(*r);
    Scalar s(fallback);
    return s;
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
    if (inf_ || o.inf_) return infinity();
    if (exact_ && o.exact_) return from_opt(Ratio::add(rat_, o.rat_), value() + o.value());
    return Scalar(value() + o.value());
}

Scalar Scalar::operator-(const Scalar& o) const {
    if (inf_) return infinity();
    if (o.inf_) return Scalar(-std::numeric_limits<double>::infinity());
    if (exact_ && o.exact_) return from_opt(Ratio::sub(rat_, o.rat_), value() - o.value());
    return Scalar(value() - o.value());
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (inf_ || o.inf_) return infinity();
    if (exact_ && o.exact_) return from_opt(Ratio::mul(rat_, o.rat_), value() * o.value());
    return Scalar(value() * o.value());
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (inf_ && !o.inf_) return infinity();
    if (o.inf_) return Scalar(Ratio(0));
    if (exact_ && o.exact_) {
        auto r = Ratio::div(rat_, o.rat_);
        if (r) return Scalar(*r);
    }
    return Scalar(value() / o.value());
}

Scalar Scalar::inv() const {
    if (inf_) return Scalar(Ratio(0));
    if (exact_ && rat_.num() != 0) {
        auto r = Ratio::div(Ratio(1), rat_);
        if (r) return Scalar(*r);
    }
    return Scalar(1.0 / value());
}

bool Scalar::eq(const Scalar& o) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    if (exact_ && o.exact_) return rat_ == o.rat_;
    double a = value(), b = o.value();
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= 1e-12 * scale;
}

bool Scalar::lt(const Scalar& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    if (exact_ && o.exact_) return rat_ < o.rat_;
    return value() < o.value() && !eq(o);
}

bool Scalar::le(const Scalar& o) const { return lt(o) || eq(o); }

std::string Scalar::str() const {
    if (inf_) return "inf";
    if (exact_) return rat_.str();
    return std::to_string(val_);
}

}  // namespace inls
