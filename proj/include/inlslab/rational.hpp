#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace inls {

// Exact rational with int64 storage. Arithmetic goes through __int128 and
// reduces by gcd; results that do not fit back into int64 are reported as
// overflow so callers can demote to floating point.
class Ratio {
public:
    Ratio() : num_(0), den_(1) {}
    Ratio(std::int64_t n) : num_(n), den_(1) {}
    Ratio(std::int64_t n, std::int64_t d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const { return den_ == 1; }

    static std::optional<Ratio> add(const Ratio& a, const Ratio& b);
    static std::optional<Ratio> sub(const Ratio& a, const Ratio& b);
    static std::optional<Ratio> mul(const Ratio& a, const Ratio& b);
    static std::optional<Ratio> div(const Ratio& a, const Ratio& b);

    // Recovers p/q (q <= max_den) when x is bit-exactly p/q in double
    // arithmetic; config floats like 0.5, 1.2 or 1e-3 qualify.
    static std::optional<Ratio> from_double(double x, std::int64_t max_den = 1000000);

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    // a < b without overflow via __int128 cross products.
    friend bool operator<(const Ratio& a, const Ratio& b);

    std::string str() const;

private:
    std::int64_t num_;
    std::int64_t den_;  // > 0
};

// Scalar for exponent arithmetic: exact rational when possible, double
// otherwise, with a distinguished +infinity. Mixing a rational with a double
// demotes to double; comparisons on the double path use a relative 1e-12
// tolerance (scaled by the operands).
class Scalar {
public:
    Scalar() : rat_(Ratio(0)), exact_(true), inf_(false), val_(0.0) {}
    Scalar(const Ratio& r) : rat_(r), exact_(true), inf_(false), val_(r.value()) {}
    Scalar(double v);
    Scalar(int v) : Scalar(Ratio(v)) {}

    static Scalar infinity();
    static Scalar exact(std::int64_t n, std::int64_t d) { return Scalar(Ratio(n, d)); }

    bool is_exact() const { return exact_; }
    bool is_inf() const { return inf_; }
    double value() const;
    const Ratio& ratio() const { return rat_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;

    // 1/x with 1/inf = 0.
    Scalar inv() const;

    // Equality: exact on the rational path, 1e-12 relative on doubles.
    bool eq(const Scalar& o) const;
    bool lt(const Scalar& o) const;   // strict <
    bool le(const Scalar& o) const;   // <= with the same tolerance as eq
    std::string str() const;

private:
    Ratio rat_;
    bool exact_;
    bool inf_;
    double val_;
};

}  // namespace inls
