#pragma once

// Exact coefficient fields: GMP rationals and prime fields F_p.
//
// Every algorithm in the library is a template over a field type K that
// supports K(long), + - * /, unary minus and ==.  The free functions below
// (is_zero, to_string, parse_scalar, characteristic) are the only extra
// vocabulary the algorithms rely on.

#include "siltkit/errors.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

namespace siltkit {

using Rational = mpq_class;

/// Element of F_p.  The modulus is per-thread state installed with
/// PrimeField::Scope (the same idiom as NTL's zz_p::init); all values that
/// meet in one computation must be created under the same scope.
class PrimeField {
public:
    PrimeField() = default;
    PrimeField(long n) : v_(reduce(n)) {} // NOLINT(google-explicit-constructor)

    class Scope {
    public:
        explicit Scope(std::uint64_t p) : saved_(slot()) {
            if (p < 2 || p >= (1ULL << 31) || !is_prime(p))
                throw InvalidArgument("characteristic must be a prime below 2^31, got " + std::to_string(p));
            slot() = p;
        }
        ~Scope() { slot() = saved_; }
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        std::uint64_t saved_;
    };

    static std::uint64_t modulus() {
        if (slot() == 0)
            throw InvalidArgument("PrimeField used without an active PrimeField::Scope");
        return slot();
    }

    static bool is_prime(std::uint64_t n) {
        if (n < 2)
            return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

    std::uint64_t value() const { return v_; }

    PrimeField& operator+=(PrimeField o) {
        v_ = (v_ + o.v_) % modulus();
        return *this;
    }
    PrimeField& operator-=(PrimeField o) {
        v_ = (v_ + modulus() - o.v_) % modulus();
        return *this;
    }
    PrimeField& operator*=(PrimeField o) {
        v_ = (v_ * o.v_) % modulus();
        return *this;
    }
    PrimeField& operator/=(PrimeField o) { return *this *= o.inverse(); }

    PrimeField inverse() const {
        if (v_ == 0)
            throw InvalidArgument("division by zero in F_p");
        // Fermat: v^(p-2)
        std::uint64_t p = modulus(), e = p - 2, base = v_, r = 1;
        while (e) {
            if (e & 1)
                r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        PrimeField out;
        out.v_ = r;
        return out;
    }

    friend PrimeField operator+(PrimeField a, PrimeField b) { return a += b; }
    friend PrimeField operator-(PrimeField a, PrimeField b) { return a -= b; }
    friend PrimeField operator*(PrimeField a, PrimeField b) { return a *= b; }
    friend PrimeField operator/(PrimeField a, PrimeField b) { return a /= b; }
    friend PrimeField operator-(PrimeField a) { return PrimeField(0) - a; }
    friend bool operator==(PrimeField a, PrimeField b) { return a.v_ == b.v_; }
    friend bool operator!=(PrimeField a, PrimeField b) { return a.v_ != b.v_; }
    friend std::ostream& operator<<(std::ostream& os, PrimeField a) { return os << a.v_; }

private:
    static std::uint64_t& slot() {
        thread_local std::uint64_t p = 0;
        return p;
    }
    static std::uint64_t reduce(long n) {
        auto p = static_cast<long long>(modulus());
        long long r = static_cast<long long>(n) % p;
        return static_cast<std::uint64_t>(r < 0 ? r + p : r);
    }

    std::uint64_t v_ = 0;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(PrimeField x) { return x.value() == 0; }

inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(PrimeField x) { return std::to_string(x.value()); }

template <class K>
std::uint64_t characteristic();
template <>
inline std::uint64_t characteristic<Rational>() { return 0; }
template <>
inline std::uint64_t characteristic<PrimeField>() { return PrimeField::modulus(); }

namespace detail {

inline bool is_integer_literal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size())
        return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

/// Parses "p" or "p/q" exactly; throws InvalidArgument on malformed input.
inline Rational parse_rational_literal(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw InvalidArgument("malformed rational literal '" + s + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num), d(den);
    if (d == 0)
        throw InvalidArgument("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

} // namespace detail

template <class K>
K parse_scalar(const std::string& s);

template <>
inline Rational parse_scalar<Rational>(const std::string& s) {
    return detail::parse_rational_literal(s);
}

template <>
inline PrimeField parse_scalar<PrimeField>(const std::string& s) {
    Rational q = detail::parse_rational_literal(s);
    auto p = PrimeField::modulus();
    mpz_class num = q.get_num() % p, den = q.get_den() % p;
    if (num < 0)
        num += p;
    if (den == 0)
        throw InvalidArgument("denominator of '" + s + "' vanishes in characteristic " + std::to_string(p));
    return PrimeField(num.get_si()) / PrimeField(den.get_si());
}

} // namespace siltkit
