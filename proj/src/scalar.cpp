#include "hopfalgd/scalar.hpp"

namespace hopfalgd {

namespace {
thread_local std::uint64_t active_modulus = 0;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
}  // namespace

Fp::Scope::Scope(std::uint64_t p) : saved_(active_modulus)
{
    if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
    active_modulus = p;
}

Fp::Scope::~Scope() { active_modulus = saved_; }

std::uint64_t Fp::current_modulus() { return active_modulus; }

bool Fp::is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // deterministic witness set for 64-bit integers
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Fp::Fp(long long n) : p_(current_modulus())
{
    if (p_ == 0) {
        if (n != 0) throw FieldError("F_p literal used outside an Fp::Scope");
        v_ = 0;
        return;
    }
    long long m = n % static_cast<long long>(p_);
    v_ = static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(p_) : m);
}

bool Fp::bound(const Fp& o) const
{
    if (p_ != o.p_ && p_ != 0 && o.p_ != 0) throw FieldError("mixing residues of different moduli");
    return true;
}

void Fp::adopt(const Fp& o)
{
    bound(o);
    if (p_ == 0) p_ = o.p_;
}

Fp Fp::inverse() const
{
    if (v_ == 0) throw FieldError("division by zero");
    return Fp(powmod(v_, p_ - 2, p_), p_);
}

Fp& Fp::operator+=(const Fp& o)
{
    adopt(o);
    if (p_ == 0) return *this;
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
}

Fp& Fp::operator-=(const Fp& o)
{
    adopt(o);
    if (p_ == 0) return *this;
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
}

Fp& Fp::operator*=(const Fp& o)
{
    adopt(o);
    if (p_ == 0) return *this;
    v_ = mulmod(v_, o.v_, p_);
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value(); }

}  // namespace hopfalgd
