#include "theta/numtheory.hpp"

#include <algorithm>
#include <cctype>

namespace theta {

Rat parse_rat(const std::string& text) {
    auto digits = [](const std::string& s) {
        if (s.empty()) return false;
        size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::string n = text, d = "1";
    if (auto pos = text.find('/'); pos != std::string::npos) {
        n = text.substr(0, pos);
        d = text.substr(pos + 1);
    }
    if (!digits(n) || !digits(d) || d[0] == '-')
        throw std::domain_error("parse_rat: malformed rational '" + text + "'");
    Int nn(n), dd(d);
    return make_rat(nn, dd);
}

std::string format_rat(const Rat& q) {
    if (den(q) == 1) return num(q).get_str();
    return num(q).get_str() + "/" + den(q).get_str();
}

std::optional<Int> sqrt_exact_int(const Int& n) {
    if (n < 0) throw std::domain_error("sqrt_exact: negative input");
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Rat> sqrt_exact(const Rat& q) {
    if (q < 0) throw std::domain_error("sqrt_exact: negative input");
    auto rn = sqrt_exact_int(num(q));
    if (!rn) return std::nullopt;
    auto rd = sqrt_exact_int(den(q));
    if (!rd) return std::nullopt;
    return make_rat(*rn, *rd);  // num/den are coprime, so both must be squares
}

namespace {

// Pollard rho, Brent cycle detection. n odd composite, not a prime power
// guard needed: works for any composite n > 1 with a nontrivial factor.
Int pollard_brent(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xd1ce5bul);
    while (true) {
        Int y = rng.get_z_range(n - 1) + 1;
        Int c = rng.get_z_range(n - 1) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = Int(r - k);
                if (lim > m) lim = m;
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * (x > y ? x - y : y - x) % n;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

void factor_into(Int n, std::vector<std::pair<Int, unsigned>>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 32) != 0) {
        out.emplace_back(n, 1);
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor(const Int& n) {
    if (n <= 0) throw std::domain_error("factor: input must be positive");
    std::vector<std::pair<Int, unsigned>> out;
    Int m = n;
    for (long p = 2; p < 100000 && Int(p) * p <= m; p = (p == 2) ? 3 : p + 2) {
        if (m % p != 0) continue;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.emplace_back(Int(p), e);
    }
    if (m > 1) {
        std::vector<std::pair<Int, unsigned>> rest;
        factor_into(m, rest);
        std::sort(rest.begin(), rest.end());
        for (auto& [p, e] : rest) {
            if (!out.empty() && out.back().first == p)
                out.back().second += e;
            else
                out.emplace_back(p, e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> divisors(const Int& n) {
    auto fs = factor(n);
    size_t count = 1;
    for (auto& [p, e] : fs) {
        count *= e + 1;
        if (count > (size_t{1} << 22))
            throw std::domain_error("divisors: too many divisors");
    }
    std::vector<Int> out{1};
    for (auto& [p, e] : fs) {
        size_t base = out.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

SquarefreePart squarefree_part(const Rat& q) {
    if (q == 0) throw std::domain_error("squarefree_part: zero input");
    // sf(p/q) = sf(p*q) since p/q = p*q / q^2; numerator and denominator
    // are coprime so no cross cancellation occurs.
    Int n = abs(num(q)) * den(q);
    Int part = 1;
    for (auto& [p, e] : factor(n))
        if (e % 2 == 1) part *= p;
    return {part, q > 0 ? 1 : -1};
}

}  // namespace theta
