#ifndef HOPFALGD_SCALAR_HPP
#define HOPFALGD_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hopfalgd {

// GMP keeps mpq values canonical: lowest terms, positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// The two-argument number constructor of Boost 1.74 mishandles a negative
// denominator, so fractions are built by division.
inline Rational make_rational(long num, long den)
{
    if (den == 0) throw std::domain_error("zero denominator");
    return Rational(num) / Rational(den);
}

struct FieldError : std::domain_error {
    using std::domain_error::domain_error;
};

// Residue in [0, p).  Integer literals (including the 0 and 1 that Eigen
// manufactures internally) are reduced modulo the modulus of the innermost
// active Fp::Scope on the calling thread.
class Fp {
public:
    class Scope {
    public:
        explicit Scope(std::uint64_t p);
        ~Scope();
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;

    private:
        std::uint64_t saved_;
    };

    static std::uint64_t current_modulus();
    static bool is_prime(std::uint64_t n);

    Fp() : v_(0), p_(current_modulus()) {}
    Fp(int n) : Fp(static_cast<long long>(n)) {}
    Fp(long n) : Fp(static_cast<long long>(n)) {}
    Fp(long long n);
    Fp(std::uint64_t v, std::uint64_t p) : v_(p ? v % p : 0), p_(p) {}

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    Fp inverse() const;

    Fp& operator+=(const Fp& o);
    Fp& operator-=(const Fp& o);
    Fp& operator*=(const Fp& o);
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend Fp operator-(const Fp& a) { return a.v_ == 0 ? a : Fp(a.p_ - a.v_, a.p_); }
    friend Fp operator+(const Fp& a) { return a; }

    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.bound(b); }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

private:
    bool bound(const Fp& o) const;
    void adopt(const Fp& o);

    std::uint64_t v_;
    std::uint64_t p_;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

// Mirrors Eigen's requirements for comparisons used by isZero/isApprox.
inline Fp abs(const Fp& x) { return x; }
inline Fp abs2(const Fp& x) { return x * x; }
inline Fp conj(const Fp& x) { return x; }
inline Fp real(const Fp& x) { return x; }
inline Fp imag(const Fp&) { return Fp(std::uint64_t{0}, Fp::current_modulus()); }
inline Fp sqrt(const Fp&) { throw FieldError("sqrt is not defined on F_p"); }
inline bool operator<(const Fp& a, const Fp& b) { return a.value() < b.value(); }
inline bool operator<=(const Fp& a, const Fp& b) { return a.value() <= b.value(); }
inline bool operator>(const Fp& a, const Fp& b) { return a.value() > b.value(); }
inline bool operator>=(const Fp& a, const Fp& b) { return a.value() >= b.value(); }

template <class K> struct FieldTraits;

template <> struct FieldTraits<Rational> {
    static std::string name() { return "Q"; }
    static std::uint64_t characteristic() { return 0; }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational inverse(const Rational& x)
    {
        if (x.is_zero()) throw FieldError("division by zero");
        return 1 / x;
    }
    static std::string str(const Rational& x) { return x.str(); }
};

template <> struct FieldTraits<Fp> {
    static std::string name() { return "F_" + std::to_string(Fp::current_modulus()); }
    static std::uint64_t characteristic() { return Fp::current_modulus(); }
    static bool is_zero(const Fp& x) { return x.is_zero(); }
    static Fp inverse(const Fp& x) { return x.inverse(); }
    static std::string str(const Fp& x) { return std::to_string(x.value()); }
};

template <class K> bool is_zero(const K& x) { return FieldTraits<K>::is_zero(x); }
template <class K> std::string to_string(const K& x) { return FieldTraits<K>::str(x); }

}  // namespace hopfalgd

namespace Eigen {

template <> struct NumTraits<hopfalgd::Fp> : GenericNumTraits<hopfalgd::Fp> {
    typedef hopfalgd::Fp Real;
    typedef hopfalgd::Fp NonInteger;
    typedef hopfalgd::Fp Nested;
    typedef hopfalgd::Fp Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    static inline int max_digits10() { return 0; }
};

}  // namespace Eigen

#endif
