#include "frobenius/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace frobenius {

std::int64_t PrimeList::count_upto(std::int64_t x) const {
    return std::upper_bound(primes.begin(), primes.end(), x) - primes.begin();
}

PrimeList sieve_primes(std::int64_t limit) {
    PrimeList out;
    out.limit = limit;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    for (std::int64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.primes.push_back(i);
    return out;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::int64_t d = 5; d <= n / d; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

int legendre(std::int64_t a, std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("legendre: modulus " + std::to_string(p) + " is not an odd prime");
    const std::int64_t r = mod(a, p);
    if (r == 0) return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t r0 = p, r1 = mod(a, p);
    if (r1 == 0) throw std::invalid_argument("mod_inverse: " + std::to_string(a) + " is divisible by " + std::to_string(p));
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: gcd(a, p) != 1");
    return mod(s0, p);
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    if (n < 2) return n;
    // Newton from above: x_{k+1} = (x_k + n / x_k) / 2 decreases until floor(sqrt(n)).
    std::int64_t x = n;
    std::int64_t y = n / 2 + (n & 1);
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

std::int64_t squarefree_part(std::int64_t n) {
    if (n == 0) throw std::invalid_argument("squarefree_part: zero has no squarefree part");
    const std::int64_t sign = n < 0 ? -1 : 1;
    std::int64_t m = n < 0 ? -n : n;
    std::int64_t d = 1;
    for (std::int64_t q = 2; q <= m / q; ++q) {
        int e = 0;
        while (m % q == 0) {
            m /= q;
            ++e;
        }
        if (e % 2 == 1) d *= q;
    }
    return sign * d * m;
}

int mobius(std::int64_t d) {
    if (d < 1) throw std::invalid_argument("mobius: argument must be positive");
    int result = 1;
    for (std::int64_t q = 2; q <= d / q; ++q) {
        if (d % q != 0) continue;
        d /= q;
        if (d % q == 0) return 0;
        result = -result;
    }
    if (d > 1) result = -result;
    return result;
}

std::vector<int> mobius_table(std::int64_t n) {
    std::vector<int> mu(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)) + 1, 1);
    std::vector<bool> composite(mu.size(), false);
    if (!mu.empty()) mu[0] = 0;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        for (std::int64_t j = i; j <= n; j += i) {
            if (j > i) composite[j] = true;
            mu[j] = -mu[j];
        }
        if (i <= n / i)
            for (std::int64_t j = i * i; j <= n; j += i * i) mu[j] = 0;
    }
    return mu;
}

QuadraticCharacter::QuadraticCharacter(std::int64_t p) : p_(p), chi_(static_cast<std::size_t>(p), -1) {
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("QuadraticCharacter: modulus " + std::to_string(p) + " is not an odd prime");
    chi_[0] = 0;
    // y^2 for y = 1..(p-1)/2 hits each nonzero square exactly once; (y+1)^2 = y^2 + 2y + 1.
    std::int64_t sq = 0;
    for (std::int64_t y = 1; y <= (p - 1) / 2; ++y) {
        sq += 2 * y - 1;
        if (sq >= p) sq -= p;
        chi_[static_cast<std::size_t>(sq)] = 1;
    }
}

}  // namespace frobenius
