#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "tornpaper/qstring.hpp"

namespace tornpaper {

namespace detail {

// Minimal unsigned bignum (little-endian 64-bit limbs); just enough for
// enumerative rank/unrank of constrained strings.
class BigUint {
  public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v) {
        if (v) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }

    static int compare(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        }
        return 0;
    }
    friend bool operator<(const BigUint& a, const BigUint& b) { return compare(a, b) < 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return compare(a, b) >= 0; }
    friend bool operator==(const BigUint& a, const BigUint& b) { return compare(a, b) == 0; }

    void add(const BigUint& o) {
        if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
        unsigned __int128 carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            unsigned __int128 s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
            limbs_[i] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
    }

    // this -= o; requires this >= o.
    void sub(const BigUint& o) {
        unsigned __int128 borrow = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            unsigned __int128 d = static_cast<unsigned __int128>(limbs_[i]) -
                                  (i < o.limbs_.size() ? o.limbs_[i] : 0) - borrow;
            limbs_[i] = static_cast<std::uint64_t>(d);
            borrow = (d >> 64) ? 1 : 0;
        }
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    void mul_small(std::uint64_t v) {
        if (v == 0) {
            limbs_.clear();
            return;
        }
        unsigned __int128 carry = 0;
        for (auto& limb : limbs_) {
            unsigned __int128 p = static_cast<unsigned __int128>(limb) * v + carry;
            limb = static_cast<std::uint64_t>(p);
            carry = p >> 64;
        }
        if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
    }

    void add_small(std::uint64_t v) { add(BigUint(v)); }

    // this /= v, returns remainder.
    std::uint64_t divmod_small(std::uint64_t v) {
        unsigned __int128 rem = 0;
        for (std::size_t i = limbs_.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | limbs_[i];
            limbs_[i] = static_cast<std::uint64_t>(cur / v);
            rem = cur % v;
        }
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        return static_cast<std::uint64_t>(rem);
    }

    // floor(log_base(this)) + 1 in base-`base` digits; 0 for zero.
    std::size_t digit_count(std::uint64_t base) const {
        BigUint t(*this);
        std::size_t digits = 0;
        while (!t.is_zero()) {
            t.divmod_small(base);
            ++digits;
        }
        return digits;
    }

  private:
    std::vector<std::uint64_t> limbs_;
};

}  // namespace detail

// Injective maps Sigma^m -> Sigma^N whose outputs start with 1 and contain no
// zero-run of length f (hence the trailing zero-run is < f). Two schemes
// share the contract:
//   stuffing             -- a literal 1 at every output position divisible by
//                           f, payload in between; m = N - ceil(N/f).
//   sequence_replacement -- enumerative (rank/unrank) coding of the full
//                           constrained set, m = floor(log_q |S_N|); denser
//                           than stuffing, used where rate matters.
class RllScheme {
  public:
    enum class Kind { stuffing, sequence_replacement };

    static RllScheme stuffing(unsigned q, std::size_t f) {
        return RllScheme(Kind::stuffing, q, f);
    }
    static RllScheme sequence_replacement(unsigned q, std::size_t f) {
        return RllScheme(Kind::sequence_replacement, q, f);
    }
    static RllScheme by_name(const std::string& name, unsigned q, std::size_t f) {
        if (name == "stuffing") return stuffing(q, f);
        if (name == "sequence_replacement") return sequence_replacement(q, f);
        throw ParamError("RllScheme: unknown scheme '" + name + "'");
    }

    Kind kind() const { return kind_; }
    unsigned q() const { return q_; }
    std::size_t f() const { return f_; }
    std::string name() const {
        return kind_ == Kind::stuffing ? "stuffing" : "sequence_replacement";
    }

    std::size_t payload_len(std::size_t N) const {
        if (kind_ == Kind::stuffing) return N - ceil_div(N, f_);
        const auto& tab = counts(N);
        // |S_N| = count from position 1 with run 0, having forced y_0 = 1.
        return tab[1 * f_ + 0].digit_count(q_) == 0 ? 0 : tab[1 * f_ + 0].digit_count(q_) - 1;
    }

    QString encode(const QString& x, std::size_t N) const {
        if (x.q() != q_) throw ParamError("rll_encode: alphabet mismatch");
        if (x.size() != payload_len(N)) throw ParamError("rll_encode: payload length mismatch");
        QString y = (kind_ == Kind::stuffing) ? encode_stuffing(x, N) : encode_enum(x, N);
        return y;
    }

    QString decode(const QString& y) const {
        if (y.q() != q_) throw ParamError("rll_decode: alphabet mismatch");
        return (kind_ == Kind::stuffing) ? decode_stuffing(y) : decode_enum(y);
    }

  private:
    RllScheme(Kind kind, unsigned q, std::size_t f) : kind_(kind), q_(q), f_(f) {
        if (f < 2) throw ParamError("RllScheme: f must be >= 2");
    }

    static std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

    QString encode_stuffing(const QString& x, std::size_t N) const {
        QString y(q_);
        std::size_t next = 0;
        for (std::size_t p = 0; p < N; ++p) {
            if (p % f_ == 0)
                y.push_back(1);
            else
                y.push_back(x[next++]);
        }
        return y;
    }

    QString decode_stuffing(const QString& y) const {
        QString x(q_);
        for (std::size_t p = 0; p < y.size(); ++p) {
            if (p % f_ == 0) {
                if (y[p] != 1)
                    throw CorruptionError("rll_decode: stuffed position is not 1");
            } else {
                x.push_back(y[p]);
            }
        }
        return x;
    }

    // counts[pos*f + run] = number of admissible completions of positions
    // [pos, N) given a current trailing zero-run of `run`.
    using CountTable = std::vector<detail::BigUint>;
    const CountTable& counts(std::size_t N) const {
        static std::mutex mu;
        static std::map<std::tuple<unsigned, std::size_t, std::size_t>, CountTable> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(q_, f_, N);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        CountTable tab((N + 1) * f_);
        for (std::size_t run = 0; run < f_; ++run) tab[N * f_ + run] = detail::BigUint(1);
        for (std::size_t pos = N; pos-- > 1;) {
            for (std::size_t run = 0; run < f_; ++run) {
                detail::BigUint c;
                if (run + 1 < f_) c = tab[(pos + 1) * f_ + run + 1];  // append 0
                detail::BigUint nz = tab[(pos + 1) * f_ + 0];          // append any nonzero
                nz.mul_small(q_ - 1);
                c.add(nz);
                tab[pos * f_ + run] = std::move(c);
            }
        }
        // Position 0 is the forced leading 1.
        tab[0 * f_ + 0] = tab[1 * f_ + 0];
        return cache.emplace(key, std::move(tab)).first->second;
    }

    QString encode_enum(const QString& x, std::size_t N) const {
        const auto& tab = counts(N);
        detail::BigUint rank;
        for (std::size_t i = 0; i < x.size(); ++i) {
            rank.mul_small(q_);
            rank.add_small(x[i]);
        }
        QString y(q_);
        y.push_back(1);
        std::size_t run = 0;
        for (std::size_t pos = 1; pos < N; ++pos) {
            Symbol chosen = 0;
            for (Symbol s = 0; s < q_; ++s) {
                const std::size_t next_run = (s == 0) ? run + 1 : 0;
                if (next_run >= f_) continue;
                const detail::BigUint& c = tab[(pos + 1) * f_ + next_run];
                if (rank < c) {
                    chosen = s;
                    break;
                }
                rank.sub(c);
            }
            y.push_back(chosen);
            run = (chosen == 0) ? run + 1 : 0;
        }
        if (!rank.is_zero()) throw ParamError("rll_encode: payload exceeds scheme capacity");
        return y;
    }

    QString decode_enum(const QString& y) const {
        const std::size_t N = y.size();
        const std::size_t m = payload_len(N);
        if (N == 0 || y[0] != 1) throw CorruptionError("rll_decode: leading symbol is not 1");
        const auto& tab = counts(N);
        detail::BigUint rank;
        std::size_t run = 0;
        for (std::size_t pos = 1; pos < N; ++pos) {
            const Symbol sym = y[pos];
            if (sym == 0 && run + 1 >= f_)
                throw CorruptionError("rll_decode: zero-run of length f present");
            for (Symbol s = 0; s < sym; ++s) {
                const std::size_t next_run = (s == 0) ? run + 1 : 0;
                if (next_run >= f_) continue;
                rank.add(tab[(pos + 1) * f_ + next_run]);
            }
            run = (sym == 0) ? run + 1 : 0;
        }
        std::vector<Symbol> digits(m, 0);
        for (std::size_t i = m; i-- > 0;)
            digits[i] = static_cast<Symbol>(rank.divmod_small(q_));
        if (!rank.is_zero())
            throw CorruptionError("rll_decode: word is outside the encoder image");
        return QString(q_, std::move(digits));
    }

    Kind kind_;
    unsigned q_;
    std::size_t f_;
};

inline QString rll_encode(const RllScheme& scheme, const QString& x, std::size_t N) {
    return scheme.encode(x, N);
}
inline QString rll_decode(const RllScheme& scheme, const QString& y) {
    return scheme.decode(y);
}

}  // namespace tornpaper
