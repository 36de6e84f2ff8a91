#pragma once

#include <cstdint>
#include <vector>

namespace frobenius {

/// All primes up to `limit`, ascending.
struct PrimeList {
    std::int64_t limit = 0;
    std::vector<std::int64_t> primes;

    std::size_t size() const { return primes.size(); }
    auto begin() const { return primes.begin(); }
    auto end() const { return primes.end(); }

    /// pi(x) for x <= limit.
    std::int64_t count_upto(std::int64_t x) const;
};

PrimeList sieve_primes(std::int64_t limit);

/// Deterministic trial-division primality check (n < 2^62).
bool is_prime(std::int64_t n);

/// Residue of a in [0, m).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

/// Legendre symbol by Euler's criterion. Throws std::invalid_argument unless p is an odd prime.
int legendre(std::int64_t a, std::int64_t p);

/// Inverse of a modulo p in [1, p-1]. Throws std::invalid_argument when p | a.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);

/// floor(sqrt(n)) by integer Newton iteration.
std::int64_t isqrt(std::int64_t n);

/// d squarefree with n = d*m^2, sign(d) = sign(n). Throws on n = 0.
std::int64_t squarefree_part(std::int64_t n);

int mobius(std::int64_t d);

/// mu(0..n); entry 0 is unused (set to 0).
std::vector<int> mobius_table(std::int64_t n);

/// Quadratic character of F_p as a lookup table, built once per prime and
/// reused for every curve reduced at that prime.
class QuadraticCharacter {
public:
    explicit QuadraticCharacter(std::int64_t p);

    std::int64_t prime() const { return p_; }
    /// Caller guarantees 0 <= r < p.
    int operator()(std::int64_t r) const { return chi_[static_cast<std::size_t>(r)]; }

private:
    std::int64_t p_;
    std::vector<std::int8_t> chi_;
};

}  // namespace frobenius
