#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tornpaper/gf.hpp"

namespace tornpaper {

using FieldWord = std::vector<std::optional<std::uint32_t>>;  // nullopt = erasure

// Systematic Reed-Solomon code of length n_out and dimension n_msg over a
// given field; minimum distance n_out - n_msg + 1. Position j has locator
// alpha^j, message symbols ride the high coefficients. Decoding is
// errors-and-erasures: erasure locator + Forney syndromes, PGZ error
// location (Gaussian elimination with degree fallback), magnitudes from the
// syndrome system, full syndrome re-verification. Succeeds whenever
// 2*errors + erasures <= n_out - n_msg; reports failure otherwise rather
// than guessing.
class RsCode {
  public:
    RsCode(const Field& field, std::size_t n_out, std::size_t n_msg)
        : F(field), n_(n_out), k_(n_msg) {
        if (k_ > n_) throw ParamError("RsCode: dimension exceeds length");
        if (n_ >= F.size()) throw ParamError("RsCode: length must be < field size");
        const std::size_t rho = n_ - k_;
        gen_.assign(1, 1);  // prod_{i=1..rho} (x - alpha^i)
        for (std::size_t i = 1; i <= rho; ++i) {
            std::vector<std::uint32_t> next(gen_.size() + 1, 0);
            const std::uint32_t root = F.alpha_pow(i);
            for (std::size_t d = 0; d < gen_.size(); ++d) {
                next[d + 1] = F.add(next[d + 1], gen_[d]);
                next[d] = F.sub(next[d], F.mul(gen_[d], root));
            }
            gen_ = std::move(next);
        }
    }

    std::size_t length() const { return n_; }
    std::size_t dimension() const { return k_; }
    std::size_t redundancy() const { return n_ - k_; }

    // Returns the full codeword, message first, parity after.
    std::vector<std::uint32_t> encode(const std::vector<std::uint32_t>& msg) const {
        if (msg.size() != k_) throw ParamError("RsCode::encode: message length mismatch");
        const std::size_t rho = n_ - k_;
        // Long division of m(x) * x^rho by g(x); remainder becomes the parity.
        std::vector<std::uint32_t> rem(rho, 0);
        for (std::size_t i = k_; i-- > 0;) {
            const std::uint32_t lead = F.add(msg[i], rho ? rem[rho - 1] : 0);
            if (rho == 0) continue;
            for (std::size_t d = rho; d-- > 1;)
                rem[d] = F.add(rem[d - 1], F.neg(F.mul(lead, gen_[d])));
            rem[0] = F.neg(F.mul(lead, gen_[0]));
        }
        std::vector<std::uint32_t> cw(n_);
        for (std::size_t i = 0; i < k_; ++i) cw[i] = msg[i];
        for (std::size_t d = 0; d < rho; ++d) cw[k_ + d] = F.neg(rem[d]);  // c = m x^rho - rem
        return cw;
    }

    std::optional<std::vector<std::uint32_t>> decode(const FieldWord& word) const {
        if (word.size() != n_) throw ParamError("RsCode::decode: word length mismatch");
        const std::size_t rho = n_ - k_;
        std::vector<std::size_t> erased;
        std::vector<std::uint32_t> r(n_, 0);
        for (std::size_t j = 0; j < n_; ++j) {
            if (word[j])
                r[j] = *word[j];
            else
                erased.push_back(j);
        }
        if (erased.size() > rho) return std::nullopt;

        std::vector<std::uint32_t> synd(rho, 0);
        bool all_zero = true;
        for (std::size_t i = 0; i < rho; ++i) {
            synd[i] = eval_word(r, i + 1);
            all_zero = all_zero && synd[i] == 0;
        }
        if (all_zero && erased.empty()) return message_of(r);

        // Forney syndromes: T = S * Gamma mod x^rho.
        std::vector<std::uint32_t> gamma{1};
        for (std::size_t pos : erased) {
            std::vector<std::uint32_t> next(gamma.size() + 1, 0);
            const std::uint32_t X = locator(pos);
            for (std::size_t d = 0; d < gamma.size(); ++d) {
                next[d] = F.add(next[d], gamma[d]);
                next[d + 1] = F.sub(next[d + 1], F.mul(gamma[d], X));
            }
            gamma = std::move(next);
        }
        std::vector<std::uint32_t> T(rho, 0);
        for (std::size_t i = 0; i < rho; ++i) {
            std::uint32_t acc = 0;
            for (std::size_t d = 0; d <= i && d < gamma.size(); ++d)
                acc = F.add(acc, F.mul(gamma[d], synd[i - d]));
            T[i] = acc;
        }

        const std::size_t e = erased.size();
        const std::size_t nu_max = (rho - e) / 2;
        for (std::size_t nu = nu_max; nu + 1 > 0; --nu) {
            auto attempt = try_decode(r, synd, T, erased, nu);
            if (attempt) return message_of(*attempt);
            if (nu == 0) break;
        }
        return std::nullopt;
    }

  private:
    // Vector order is message-first; polynomial degrees put the parity low.
    std::size_t degree_of(std::size_t pos) const {
        return pos < k_ ? (n_ - k_) + pos : pos - k_;
    }

    std::uint32_t locator(std::size_t pos) const { return F.alpha_pow(degree_of(pos)); }

    std::uint32_t eval_word(const std::vector<std::uint32_t>& r, std::size_t power) const {
        // c(alpha^power) with coefficient degree_of(j) taken from r[j]
        std::vector<std::uint32_t> coeff(n_, 0);
        for (std::size_t j = 0; j < n_; ++j) coeff[degree_of(j)] = r[j];
        const std::uint32_t x = F.alpha_pow(power);
        std::uint32_t acc = 0;
        for (std::size_t d = n_; d-- > 0;) acc = F.add(F.mul(acc, x), coeff[d]);
        return acc;
    }

    std::vector<std::uint32_t> message_of(const std::vector<std::uint32_t>& cw) const {
        return std::vector<std::uint32_t>(cw.begin(), cw.begin() + static_cast<std::ptrdiff_t>(k_));
    }

    // Solve for an error locator of degree exactly nu consistent with the
    // Forney syndromes, then solve magnitudes over the combined support and
    // verify every syndrome.
    std::optional<std::vector<std::uint32_t>> try_decode(const std::vector<std::uint32_t>& r,
                                                         const std::vector<std::uint32_t>& synd,
                                                         const std::vector<std::uint32_t>& T,
                                                         const std::vector<std::size_t>& erased,
                                                         std::size_t nu) const {
        const std::size_t rho = synd.size();
        const std::size_t e = erased.size();
        std::vector<std::uint32_t> lambda{1};
        if (nu > 0) {
            // T_{j} = -sum_{i=1..nu} Lambda_i T_{j-i} for j = e+nu .. rho-1;
            // use the first nu equations.
            std::vector<std::vector<std::uint32_t>> M(nu, std::vector<std::uint32_t>(nu + 1, 0));
            for (std::size_t row = 0; row < nu; ++row) {
                const std::size_t j = e + nu + row;
                if (j >= rho) return std::nullopt;
                for (std::size_t col = 0; col < nu; ++col) M[row][col] = T[j - 1 - col];
                M[row][nu] = F.neg(T[j]);
            }
            auto sol = solve(M, nu);
            if (!sol) return std::nullopt;
            lambda.resize(nu + 1, 0);
            for (std::size_t i = 0; i < nu; ++i) lambda[i + 1] = (*sol)[i];
        }
        // Chien search over non-erased positions.
        std::vector<std::size_t> support(erased);
        for (std::size_t j = 0; j < n_ && support.size() < e + nu; ++j) {
            bool is_erased = false;
            for (std::size_t pos : erased)
                if (pos == j) {
                    is_erased = true;
                    break;
                }
            if (is_erased) continue;
            const std::uint32_t xinv = F.inv(locator(j));
            std::uint32_t acc = 0;
            for (std::size_t d = lambda.size(); d-- > 0;)
                acc = F.add(F.mul(acc, xinv), lambda[d]);
            if (acc == 0) support.push_back(j);
        }
        if (support.size() != e + nu) return std::nullopt;

        // Magnitudes: sum_u Y_u X_u^i = S_i for i = 1..rho.
        const std::size_t m = support.size();
        if (m > rho) return std::nullopt;
        std::vector<std::vector<std::uint32_t>> V(m, std::vector<std::uint32_t>(m + 1, 0));
        for (std::size_t row = 0; row < m; ++row) {
            for (std::size_t col = 0; col < m; ++col)
                V[row][col] = F.pow(locator(support[col]), row + 1);
            V[row][m] = synd[row];
        }
        auto mags = solve(V, m);
        if (!mags) return std::nullopt;
        std::vector<std::uint32_t> cw(r);
        for (std::size_t u = 0; u < m; ++u) cw[support[u]] = F.sub(cw[support[u]], (*mags)[u]);
        for (std::size_t i = 0; i < rho; ++i)
            if (eval_word(cw, i + 1) != 0) return std::nullopt;
        return cw;
    }

    // Gaussian elimination on an augmented n x (n+1) system; nullopt if singular.
    std::optional<std::vector<std::uint32_t>> solve(std::vector<std::vector<std::uint32_t>> M,
                                                    std::size_t n) const {
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            while (pivot < n && M[pivot][col] == 0) ++pivot;
            if (pivot == n) return std::nullopt;
            std::swap(M[col], M[pivot]);
            const std::uint32_t inv = F.inv(M[col][col]);
            for (std::size_t j = col; j <= n; ++j) M[col][j] = F.mul(M[col][j], inv);
            for (std::size_t row = 0; row < n; ++row) {
                if (row == col || M[row][col] == 0) continue;
                const std::uint32_t c = M[row][col];
                for (std::size_t j = col; j <= n; ++j)
                    M[row][j] = F.sub(M[row][j], F.mul(c, M[col][j]));
            }
        }
        std::vector<std::uint32_t> sol(n);
        for (std::size_t i = 0; i < n; ++i) sol[i] = M[i][n];
        return sol;
    }

    const Field& F;
    std::size_t n_, k_;
    std::vector<std::uint32_t> gen_;
};

}  // namespace tornpaper
