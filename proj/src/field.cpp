#include "laddermod/field.hpp"

#include <cctype>

namespace laddermod {

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint32_t p)
{
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce_mod(const mpz_class& z, std::uint32_t p)
{
    mpz_class r = z % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r.get_ui());
}

}  // namespace

Field Field::prime(std::uint32_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
    return Field(p);
}

std::string Field::name() const
{
    return p_ == 0 ? std::string("rational") : "prime " + std::to_string(p_);
}

Field Field::parse(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text == "rational" || text == "Q") return rational();
    std::string_view digits;
    if (text.rfind("prime", 0) == 0)
        digits = trim(text.substr(5));
    else if (text.size() > 1 && text[0] == 'F')
        digits = text.substr(1);
    if (digits.empty()) throw std::invalid_argument("unknown field: " + std::string(text));
    std::uint64_t p = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)) || p > (1u << 31))
            throw std::invalid_argument("bad prime: " + std::string(digits));
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (p > 0xFFFFFFFFull) throw std::invalid_argument("prime too large");
    return prime(static_cast<std::uint32_t>(p));
}

Scalar::Scalar(const Field& f, long value)
{
    if (f.is_rational()) {
        v_ = mpq_class(value);
    } else {
        std::uint32_t p = f.characteristic();
        long r = value % static_cast<long>(p);
        if (r < 0) r += p;
        v_ = Fp{p, static_cast<std::uint32_t>(r)};
    }
}

Scalar::Scalar(const Field& f, const mpq_class& value)
{
    if (f.is_rational()) {
        v_ = value;
        return;
    }
    std::uint32_t p = f.characteristic();
    std::uint32_t den = reduce_mod(value.get_den(), p);
    if (den == 0) throw std::domain_error("denominator vanishes mod " + std::to_string(p));
    std::uint32_t num = reduce_mod(value.get_num(), p);
    v_ = Fp{p, static_cast<std::uint32_t>(std::uint64_t(num) * pow_mod(den, p - 2, p) % p)};
}

Scalar Scalar::parse(const Field& f, std::string_view text)
{
    if (text.empty()) throw std::invalid_argument("empty scalar");
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (!s.empty() && allow_sign && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("malformed scalar: " + std::string(text));
    std::string ns(num);
    if (!ns.empty() && ns[0] == '+') ns.erase(0, 1);
    mpz_class n(ns, 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(f, q);
}

Field Scalar::field() const
{
    if (auto fp = std::get_if<Fp>(&v_)) return Field(fp->p);
    return Field::rational();
}

bool Scalar::is_zero() const
{
    if (auto fp = std::get_if<Fp>(&v_)) return fp->r == 0;
    return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const
{
    if (auto fp = std::get_if<Fp>(&v_)) return fp->r == 1;
    return std::get<mpq_class>(v_) == 1;
}

void Scalar::require_same(const Scalar& o) const
{
    auto a = std::get_if<Fp>(&v_);
    auto b = std::get_if<Fp>(&o.v_);
    if ((a == nullptr) != (b == nullptr) || (a && a->p != b->p))
        throw FieldMismatch("scalars from different fields");
}

Scalar Scalar::inverse() const
{
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar out = *this;
    if (auto fp = std::get_if<Fp>(&out.v_)) {
        fp->r = pow_mod(fp->r, fp->p - 2, fp->p);
    } else {
        auto& q = std::get<mpq_class>(out.v_);
        q = 1 / q;
    }
    return out;
}

Scalar Scalar::operator-() const
{
    Scalar out = *this;
    if (auto fp = std::get_if<Fp>(&out.v_)) {
        fp->r = fp->r == 0 ? 0 : fp->p - fp->r;
    } else {
        auto& q = std::get<mpq_class>(out.v_);
        q = -q;
    }
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    require_same(o);
    if (auto fp = std::get_if<Fp>(&v_)) {
        fp->r = static_cast<std::uint32_t>((std::uint64_t(fp->r) + std::get<Fp>(o.v_).r) % fp->p);
    } else {
        std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    return *this += -o;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    require_same(o);
    if (auto fp = std::get_if<Fp>(&v_)) {
        fp->r = static_cast<std::uint32_t>(std::uint64_t(fp->r) * std::get<Fp>(o.v_).r % fp->p);
    } else {
        std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    require_same(o);
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b)
{
    a.require_same(b);
    return a.v_ == b.v_;
}

std::string Scalar::str() const
{
    if (auto fp = std::get_if<Fp>(&v_)) return std::to_string(fp->r);
    return std::get<mpq_class>(v_).get_str();
}

const mpq_class& Scalar::rational() const
{
    if (auto q = std::get_if<mpq_class>(&v_)) return *q;
    throw FieldMismatch("not a rational scalar");
}

std::uint32_t Scalar::residue() const
{
    if (auto fp = std::get_if<Fp>(&v_)) return fp->r;
    throw FieldMismatch("not a prime-field scalar");
}

}  // namespace laddermod
