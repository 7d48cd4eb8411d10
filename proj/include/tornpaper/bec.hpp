#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tornpaper/qstring.hpp"
#include "tornpaper/rs.hpp"

namespace tornpaper {

using ErasureWord = std::vector<std::optional<Symbol>>;

// Systematic burst-erasure-correcting code over Sigma: corrects any <= t
// bursts of erasures of length <= depth in message||redundancy. Every
// codeword position serves interleave row (position mod depth), so a burst
// of <= depth consecutive positions touches each row at most once:
//   parity         -- t = 1, one Z_q parity symbol per row (rho = depth).
//   interleaved_rs -- general t, each row an RS code over GF(q^nu) with t
//                     redundancy field elements serialized as nu q-ary
//                     digits each (rho = t*nu*depth); q must be a prime
//                     power, nu is minimal for the row length.
class BecCode {
  public:
    enum class Kind { parity, interleaved_rs };

    static BecCode parity(unsigned q, std::size_t depth, std::size_t message_len) {
        BecCode c(Kind::parity, q, depth, 1, message_len);
        c.nu_ = 1;
        c.rho_ = depth;
        return c;
    }

    static BecCode interleaved_rs(unsigned q, std::size_t depth, std::size_t t,
                                  std::size_t message_len) {
        BecCode c(Kind::interleaved_rs, q, depth, t, message_len);
        const auto [p, r] = prime_power_split(q);
        const std::size_t max_row_msg = (message_len + depth - 1) / depth;
        std::size_t nu = 1;
        for (;; ++nu) {
            if (r * nu > 20) throw ResourceError("BecCode: row field exceeds table budget");
            unsigned __int128 fsize = 1;
            for (std::size_t i = 0; i < r * nu; ++i) fsize *= p;
            if (fsize > max_row_msg + t) break;  // RS length < field size
        }
        c.nu_ = nu;
        c.rho_ = t * nu * depth;
        c.field_ = &Field::get(p, static_cast<unsigned>(r * nu));
        return c;
    }

    Kind kind() const { return kind_; }
    std::size_t depth() const { return depth_; }
    std::size_t t() const { return t_; }
    std::size_t message_len() const { return message_len_; }
    std::size_t redundancy_len() const { return rho_; }
    std::size_t nu() const { return nu_; }

    // Systematic redundancy for `message` (the codeword is message || w).
    QString encode(const QString& message) const {
        if (message.q() != q_) throw ParamError("bec_encode: alphabet mismatch");
        if (message.size() != message_len_) throw ParamError("bec_encode: message length mismatch");
        std::vector<Symbol> w(rho_, 0);
        if (kind_ == Kind::parity) {
            // Slot message_len+i holds the running sum of its row.
            std::vector<unsigned> sums(depth_, 0);
            for (std::size_t x = 0; x < message_len_; ++x)
                sums[x % depth_] = (sums[x % depth_] + message[x]) % q_;
            for (std::size_t i = 0; i < rho_; ++i)
                w[i] = static_cast<Symbol>(sums[(message_len_ + i) % depth_]);
            return QString(q_, std::move(w));
        }
        for (std::size_t row = 0; row < depth_; ++row) {
            const auto msg_syms = row_message(message, row);
            RsCode rs(*field_, msg_syms.size() + t_, msg_syms.size());
            const auto cw = rs.encode(msg_syms);
            const auto slots = row_redundancy_slots(row);
            for (std::size_t sidx = 0; sidx < t_; ++sidx) {
                std::uint32_t v = cw[msg_syms.size() + sidx];
                // big-endian base-q digits into this symbol's nu slots
                for (std::size_t d = nu_; d-- > 0;) {
                    w[slots[sidx * nu_ + d]] = static_cast<Symbol>(v % q_);
                    v /= q_;
                }
            }
        }
        return QString(q_, std::move(w));
    }

    // word = message || w with erasures; exact message recovery while every
    // row sees at most t erased symbols, failure (with no guess) otherwise.
    std::optional<QString> decode(const ErasureWord& word) const {
        if (word.size() != message_len_ + rho_)
            throw ParamError("bec_decode: word length mismatch");
        QString out(q_);
        std::vector<Symbol> msg(message_len_, 0);
        if (kind_ == Kind::parity) {
            for (std::size_t row = 0; row < depth_; ++row) {
                std::size_t missing = 0, missing_pos = 0;
                unsigned sum = 0;
                std::optional<Symbol> parity;
                for (std::size_t x = row; x < message_len_; x += depth_) {
                    if (!word[x]) {
                        ++missing;
                        missing_pos = x;
                    } else {
                        sum = (sum + *word[x]) % q_;
                        msg[x] = *word[x];
                    }
                }
                for (std::size_t i = 0; i < rho_; ++i) {
                    if ((message_len_ + i) % depth_ != row) continue;
                    if (word[message_len_ + i]) parity = *word[message_len_ + i];
                }
                if (missing == 0) continue;
                if (missing > 1 || !parity) return std::nullopt;  // row budget exceeded
                msg[missing_pos] = static_cast<Symbol>((*parity + q_ - sum) % q_);
            }
            return QString(q_, std::move(msg));
        }
        for (std::size_t row = 0; row < depth_; ++row) {
            std::vector<std::size_t> msg_positions;
            for (std::size_t x = row; x < message_len_; x += depth_) msg_positions.push_back(x);
            RsCode rs(*field_, msg_positions.size() + t_, msg_positions.size());
            FieldWord rw(msg_positions.size() + t_);
            for (std::size_t i = 0; i < msg_positions.size(); ++i) {
                const auto& v = word[msg_positions[i]];
                rw[i] = v ? std::optional<std::uint32_t>(*v) : std::nullopt;
            }
            const auto slots = row_redundancy_slots(row);
            for (std::size_t sidx = 0; sidx < t_; ++sidx) {
                std::uint32_t v = 0;
                bool known = true;
                for (std::size_t d = 0; d < nu_; ++d) {
                    const auto& dig = word[message_len_ + slots[sidx * nu_ + d]];
                    if (!dig) {
                        known = false;
                        break;
                    }
                    v = v * q_ + *dig;
                }
                rw[msg_positions.size() + sidx] =
                    known ? std::optional<std::uint32_t>(v) : std::nullopt;
            }
            const auto decoded = rs.decode(rw);
            if (!decoded) return std::nullopt;
            for (std::size_t i = 0; i < msg_positions.size(); ++i) {
                if ((*decoded)[i] >= q_) return std::nullopt;  // outside the embedded subset
                msg[msg_positions[i]] = static_cast<Symbol>((*decoded)[i]);
            }
        }
        return QString(q_, std::move(msg));
    }

  private:
    BecCode(Kind kind, unsigned q, std::size_t depth, std::size_t t, std::size_t message_len)
        : kind_(kind), q_(q), depth_(depth), t_(t), message_len_(message_len) {
        if (depth < 1) throw ParamError("BecCode: depth >= 1 required");
        if (t < 1) throw ParamError("BecCode: t >= 1 required");
    }

    std::vector<std::uint32_t> row_message(const QString& message, std::size_t row) const {
        std::vector<std::uint32_t> out;
        for (std::size_t x = row; x < message_len_; x += depth_) out.push_back(message[x]);
        return out;
    }

    // w-local slots serving `row`, in transmitted order.
    std::vector<std::size_t> row_redundancy_slots(std::size_t row) const {
        std::vector<std::size_t> slots;
        for (std::size_t i = 0; i < rho_; ++i)
            if ((message_len_ + i) % depth_ == row) slots.push_back(i);
        return slots;
    }

    Kind kind_;
    unsigned q_;
    std::size_t depth_, t_, message_len_;
    std::size_t nu_ = 1, rho_ = 0;
    const Field* field_ = nullptr;
};

// Lemma-7-style dual predicates, each computed from its own definition by
// exhaustive window enumeration (test-scale inputs only).
struct ConfusabilityResult {
    bool bursts_confusable;
    bool erasure_confusable;
};

namespace becdetail {

inline std::vector<std::size_t> diff_support(const QString& x, const QString& y) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) d.push_back(i);
    return d;
}

// Can `support` be covered by `count` windows [k, k+len) (k in [0, n))?
inline bool coverable(const std::vector<std::size_t>& support, std::size_t n, std::size_t len,
                      std::size_t count) {
    if (support.empty()) return true;
    if (count == 0) return false;
    // the first uncovered point must be caught by a window starting in
    // (support[0]-len, support[0]]
    const std::size_t lo = support[0] >= len - 1 ? support[0] - (len - 1) : 0;
    for (std::size_t k = lo; k <= support[0] && k < n; ++k) {
        std::vector<std::size_t> rest;
        for (std::size_t v : support)
            if (v < k || v >= k + len) rest.push_back(v);
        if (coverable(rest, n, len, count - 1)) return true;
    }
    return false;
}

}  // namespace becdetail

// bursts: exists e0 supported on t windows and e1 supported on t windows
// with x + e0 = y + e1. erasures: x and y agree outside some 2t windows.
inline ConfusabilityResult burst_confusability_check(const QString& x, const QString& y,
                                                     std::size_t len, std::size_t t) {
    if (x.q() != y.q() || x.size() != y.size())
        throw ParamError("burst_confusability_check: incompatible operands");
    const std::size_t n = x.size();
    const auto support = becdetail::diff_support(x, y);

    // Bursts route: enumerate window starts for each side; given the windows,
    // suitable (e0, e1) exist iff the union covers every disagreement.
    bool bursts = false;
    std::vector<std::size_t> starts0(t, 0), starts1(t, 0);
    auto covered = [&](std::size_t v) {
        for (std::size_t s : starts0)
            if (v >= s && v < s + len) return true;
        for (std::size_t s : starts1)
            if (v >= s && v < s + len) return true;
        return false;
    };
    auto enumerate = [&](auto&& self, std::size_t side, std::size_t idx) -> void {
        if (bursts) return;
        if (side == 2) {
            bool all = true;
            for (std::size_t v : support)
                if (!covered(v)) {
                    all = false;
                    break;
                }
            bursts = bursts || all;
            return;
        }
        auto& starts = side == 0 ? starts0 : starts1;
        if (idx == t) {
            self(self, side + 1, side == 0 ? 0 : t);
            return;
        }
        for (std::size_t s = 0; s < n; ++s) {
            starts[idx] = s;
            self(self, side, idx + 1);
            if (bursts) return;
        }
    };
    if (support.empty())
        bursts = true;
    else
        enumerate(enumerate, 0, 0);

    const bool erasures = becdetail::coverable(support, n, len, 2 * t);
    return {bursts, erasures};
}

}  // namespace tornpaper
