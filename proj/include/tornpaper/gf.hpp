#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "tornpaper/common.hpp"

namespace tornpaper {

// GF(p^e) with exp/log tables. Elements are integers in [0, p^e): the base-p
// digit packing of polynomial coefficients, value = sum coeff_i * p^i. The
// modulus is the lexicographically-least monic irreducible of degree e, so a
// given (p, e) always denotes the same field.
class Field {
  public:
    static constexpr std::uint64_t kMaxSize = 1u << 20;

    static const Field& get(unsigned p, unsigned e);

    unsigned characteristic() const { return p_; }
    unsigned extension() const { return e_; }
    std::uint32_t size() const { return size_; }
    const std::vector<unsigned>& modulus() const { return mod_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p_ == 2) return a ^ b;
        std::uint32_t out = 0, mul = 1;
        for (unsigned i = 0; i < e_; ++i) {
            out += ((a % p_) + (b % p_)) % p_ * mul;
            a /= p_;
            b /= p_;
            mul *= p_;
        }
        return out;
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (p_ == 2) return a;
        std::uint32_t out = 0, mul = 1;
        for (unsigned i = 0; i < e_; ++i) {
            out += (p_ - (a % p_)) % p_ * mul;
            a /= p_;
            mul *= p_;
        }
        return out;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (size_ - 1)];
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw ParamError("Field::inv: zero");
        return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    std::uint32_t pow(std::uint32_t a, std::uint64_t n) const {
        if (a == 0) return n == 0 ? 1 : 0;
        const std::uint64_t le = (log_[a] * (n % (size_ - 1))) % (size_ - 1);
        return exp_[le];
    }

    // alpha^i for the table generator alpha.
    std::uint32_t alpha_pow(std::uint64_t i) const { return exp_[i % (size_ - 1)]; }
    std::uint32_t generator() const { return exp_[1]; }

  private:
    Field(unsigned p, unsigned e);

    unsigned p_, e_;
    std::uint32_t size_;
    std::vector<unsigned> mod_;  // monic irreducible, coefficients mod_[0..e]
    std::vector<std::uint32_t> exp_, log_;
};

namespace gfdetail {

inline bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Dense polynomials over Z_p, little-endian coefficients.
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, unsigned p) {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    // reduce mod the monic modulus
    const std::size_t deg = mod.size() - 1;
    for (std::size_t i = prod.size(); i-- > deg;) {
        const unsigned c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            prod[i - deg + j] = (prod[i - deg + j] + c * (p - mod[j])) % p;
    }
    prod.resize(deg);
    return prod;
}

inline Poly poly_xpow_mod(std::uint64_t exp, const Poly& mod, unsigned p) {
    Poly result{1};
    Poly base{0, 1};
    base = poly_mul_mod(base, {1}, mod, p);
    while (exp) {
        if (exp & 1) result = poly_mul_mod(result, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        exp >>= 1;
    }
    result.resize(mod.size() - 1);
    return result;
}

inline Poly poly_gcd(Poly a, Poly b, unsigned p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        const unsigned lead = b.back();
        unsigned lead_inv = 1;
        for (unsigned x = 1; x < p; ++x)
            if (x * lead % p == 1) {
                lead_inv = x;
                break;
            }
        Poly r = a;
        while (r.size() >= b.size()) {
            trim(r);
            if (r.size() < b.size()) break;
            const unsigned c = r.back() * lead_inv % p;
            const std::size_t shift = r.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                r[shift + i] = (r[shift + i] + c * (p - b[i])) % p;
            trim(r);
        }
        a = b;
        b = r;
    }
    return a;
}

inline Poly xpow_minus_x(std::uint64_t exp, const Poly& mod, unsigned p) {
    Poly t = poly_xpow_mod(exp, mod, p);
    if (t.size() < 2) t.resize(2, 0);
    t[1] = (t[1] + p - 1) % p;
    trim(t);
    return t;
}

// Rabin irreducibility test: x^(p^e) == x (mod f), and x^(p^(e/l)) - x is
// coprime to f for every prime l dividing e.
inline bool is_irreducible(const Poly& f, unsigned p) {
    const std::size_t e = f.size() - 1;
    if (e == 0) return false;
    std::uint64_t pe = 1;
    for (std::size_t i = 0; i < e; ++i) pe *= p;
    if (!xpow_minus_x(pe, f, p).empty()) return false;
    std::size_t rest = e;
    for (std::size_t l = 2; l <= rest; ++l) {
        if (rest % l) continue;
        while (rest % l == 0) rest /= l;
        std::uint64_t pl = 1;
        for (std::size_t i = 0; i < e / l; ++i) pl *= p;
        Poly u = xpow_minus_x(pl, f, p);
        if (u.empty()) return false;  // x^(p^(e/l)) == x would force reducibility
        if (poly_gcd(f, u, p).size() != 1) return false;
    }
    return true;
}

}  // namespace gfdetail

inline Field::Field(unsigned p, unsigned e) : p_(p), e_(e) {
    if (!gfdetail::is_prime(p)) throw ParamError("Field: characteristic must be prime");
    if (e < 1) throw ParamError("Field: extension must be >= 1");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < e; ++i) {
        size *= p;
        if (size > kMaxSize) throw ResourceError("Field: p^e exceeds table budget");
    }
    size_ = static_cast<std::uint32_t>(size);

    // Lexicographically-least monic irreducible of degree e.
    mod_.assign(e + 1, 0);
    mod_[e] = 1;
    if (e == 1) {
        mod_[0] = 0;  // x itself; reduction never used for e == 1
    } else {
        bool found = false;
        std::uint64_t lower = 0;
        const std::uint64_t limit = size;
        for (; lower < limit && !found; ++lower) {
            std::uint64_t v = lower;
            for (unsigned i = 0; i < e; ++i) {
                mod_[i] = static_cast<unsigned>(v % p);
                v /= p;
            }
            found = gfdetail::is_irreducible(mod_, p);
        }
        if (!found) throw Error("Field: no irreducible polynomial found");
    }

    // Generator search: smallest element of multiplicative order size-1.
    std::vector<std::uint64_t> prime_factors;
    {
        std::uint64_t m = size_ - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                prime_factors.push_back(d);
                while (m % d == 0) m /= d;
            }
        }
        if (m > 1) prime_factors.push_back(m);
    }
    auto mul_slow = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
        gfdetail::Poly pa, pb;
        for (std::uint32_t v = a; v; v /= p) pa.push_back(v % p);
        for (std::uint32_t v = b; v; v /= p) pb.push_back(v % p);
        if (pa.empty() || pb.empty()) return 0;
        gfdetail::Poly prod = gfdetail::poly_mul_mod(pa, pb, mod_, p);
        std::uint32_t out = 0, mul = 1;
        for (unsigned i = 0; i < e; ++i) {
            out += (i < prod.size() ? prod[i] : 0) * mul;
            mul *= p;
        }
        return out;
    };
    auto pow_slow = [&](std::uint32_t a, std::uint64_t n) -> std::uint32_t {
        std::uint32_t r = 1;
        while (n) {
            if (n & 1) r = mul_slow(r, a);
            a = mul_slow(a, a);
            n >>= 1;
        }
        return r;
    };
    std::uint32_t g = 0;
    for (std::uint32_t cand = 2; cand < size_; ++cand) {
        bool ok = true;
        for (std::uint64_t q : prime_factors)
            if (pow_slow(cand, (size_ - 1) / q) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) {
        if (size_ == 2) g = 1;  // trivial group
        else throw Error("Field: no generator found");
    }

    exp_.assign(size_ - 1, 1);
    log_.assign(size_, 0);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i + 1 < size_; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = mul_slow(cur, g);
    }
    if (cur != 1) throw Error("Field: generator order mismatch");
}

inline const Field& Field::get(unsigned p, unsigned e) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<Field>(new Field(p, e))).first;
    return *it->second;
}

// q = p^r for prime p, or throws; used to build GF(q^m) as GF(p^(r*m)).
inline std::pair<unsigned, unsigned> prime_power_split(unsigned q) {
    for (unsigned p = 2; p <= q; ++p) {
        if (!gfdetail::is_prime(p)) continue;
        unsigned r = 0;
        unsigned v = q;
        while (v % p == 0) {
            v /= p;
            ++r;
        }
        if (v == 1 && r >= 1) return {p, r};
        if (q % p == 0) break;
    }
    throw ParamError("q = " + std::to_string(q) + " is not a prime power");
}

inline const Field& field_for_blocks(unsigned q, std::size_t m) {
    const auto [p, r] = prime_power_split(q);
    const std::size_t ext = r * m;
    if (ext > 64) throw ResourceError("field_for_blocks: extension too large");
    return Field::get(p, static_cast<unsigned>(ext));
}

}  // namespace tornpaper
