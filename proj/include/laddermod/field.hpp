#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace laddermod {

// Coefficient field: the rationals (characteristic 0) or F_p for a prime p.
class Field {
public:
    static Field rational() { return Field(0); }
    static Field prime(std::uint32_t p);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const;

    // "rational", "prime 7", "F7" or "Q"
    static Field parse(std::string_view text);

    friend bool operator==(const Field&, const Field&) = default;

private:
    friend class Scalar;
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;
};

class FieldMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}
    Scalar(const Field& f, long value);
    Scalar(const Field& f, const mpq_class& value);

    static Scalar zero(const Field& f) { return Scalar(f, 0L); }
    static Scalar one(const Field& f) { return Scalar(f, 1L); }
    // integer or "n/d"; throws std::invalid_argument
    static Scalar parse(const Field& f, std::string_view text);

    Field field() const;
    bool is_zero() const;
    bool is_one() const;

    Scalar inverse() const;  // throws std::domain_error on zero
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    // canonical text: "n" or "n/d" in lowest terms; F_p prints the representative in [0,p)
    std::string str() const;

    // Only meaningful over the rationals.
    const mpq_class& rational() const;
    // Only meaningful over F_p.
    std::uint32_t residue() const;

private:
    struct Fp {
        std::uint32_t p;
        std::uint32_t r;
        friend bool operator==(const Fp&, const Fp&) = default;
    };
    std::variant<mpq_class, Fp> v_;

    void require_same(const Scalar& o) const;
};

}  // namespace laddermod
