#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tornpaper/common.hpp"

namespace tornpaper {

// Finite string over the size-q alphabet {0,...,q-1}. Immutable by
// convention: operations return new values. The alphabet is the ring Z_q
// (addition mod q), which is all the codecs require of it.
class QString {
  public:
    QString() : q_(2) {}

    explicit QString(unsigned q) : q_(q) { check_q(q); }

    QString(unsigned q, std::vector<Symbol> symbols) : q_(q), sym_(std::move(symbols)) {
        check_q(q);
        for (Symbol s : sym_)
            if (s >= q_) throw ParamError("QString: symbol out of alphabet");
    }

    static QString zeros(unsigned q, std::size_t len) {
        QString x(q);
        x.sym_.assign(len, 0);
        return x;
    }

    static QString repeat(unsigned q, Symbol s, std::size_t len) {
        if (s >= q) throw ParamError("QString: symbol out of alphabet");
        QString x(q);
        x.sym_.assign(len, s);
        return x;
    }

    unsigned q() const { return q_; }
    std::size_t size() const { return sym_.size(); }
    bool empty() const { return sym_.empty(); }
    Symbol operator[](std::size_t i) const { return sym_[i]; }
    const std::vector<Symbol>& symbols() const { return sym_; }

    void push_back(Symbol s) {
        if (s >= q_) throw ParamError("QString: symbol out of alphabet");
        sym_.push_back(s);
    }

    QString substr(std::size_t pos, std::size_t len) const {
        if (pos > sym_.size() || pos + len > sym_.size())
            throw ParamError("QString::substr: out of range");
        QString x(q_);
        x.sym_.assign(sym_.begin() + pos, sym_.begin() + pos + len);
        return x;
    }

    QString prefix(std::size_t len) const { return substr(0, len); }
    QString suffix(std::size_t len) const { return substr(size() - len, len); }

    // Length of the maximal all-zero suffix.
    std::size_t trailing_zero_run() const {
        std::size_t r = 0;
        for (auto it = sym_.rbegin(); it != sym_.rend() && *it == 0; ++it) ++r;
        return r;
    }

    std::size_t longest_zero_run() const {
        std::size_t best = 0, cur = 0;
        for (Symbol s : sym_) {
            cur = (s == 0) ? cur + 1 : 0;
            best = std::max(best, cur);
        }
        return best;
    }

    // Hamming weight (number of nonzero symbols).
    std::size_t weight() const {
        std::size_t w = 0;
        for (Symbol s : sym_)
            if (s != 0) ++w;
        return w;
    }

    friend bool operator==(const QString& a, const QString& b) {
        return a.q_ == b.q_ && a.sym_ == b.sym_;
    }
    friend bool operator!=(const QString& a, const QString& b) { return !(a == b); }

    // Length-then-lexicographic; the canonical multiset order.
    friend bool operator<(const QString& a, const QString& b) {
        if (a.sym_.size() != b.sym_.size()) return a.sym_.size() < b.sym_.size();
        return a.sym_ < b.sym_;
    }

  private:
    static void check_q(unsigned q) {
        if (q < 2 || q > 255) throw ParamError("QString: alphabet size must be in [2, 255]");
    }

    unsigned q_;
    std::vector<Symbol> sym_;
};

inline QString concat(const QString& a, const QString& b) {
    if (a.q() != b.q()) throw ParamError("concat: alphabet mismatch");
    std::vector<Symbol> s;
    s.reserve(a.size() + b.size());
    s.insert(s.end(), a.symbols().begin(), a.symbols().end());
    s.insert(s.end(), b.symbols().begin(), b.symbols().end());
    return QString(a.q(), std::move(s));
}

inline QString operator+(const QString& a, const QString& b) { return concat(a, b); }

// x + e componentwise over Z_q; d_H(x, result) = weight(e).
inline QString hamming_perturb(const QString& x, const QString& error_vector) {
    if (x.q() != error_vector.q()) throw ParamError("hamming_perturb: alphabet mismatch");
    if (x.size() != error_vector.size()) throw ParamError("hamming_perturb: length mismatch");
    std::vector<Symbol> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = static_cast<Symbol>((x[i] + error_vector[i]) % x.q());
    return QString(x.q(), std::move(out));
}

inline QString negate(const QString& x) {
    std::vector<Symbol> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = static_cast<Symbol>((x.q() - x[i]) % x.q());
    return QString(x.q(), std::move(out));
}

inline std::size_t hamming_distance(const QString& a, const QString& b) {
    if (a.q() != b.q() || a.size() != b.size())
        throw ParamError("hamming_distance: incompatible operands");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

// Text form: one character per symbol, digits 0-9 (q <= 10). For q = 4 the
// ACGT alias (A=0, C=1, G=2, T=3) is accepted on input and available on
// output.
inline std::string to_text(const QString& x, bool acgt = false) {
    if (acgt && x.q() != 4) throw ParamError("to_text: ACGT alias requires q = 4");
    if (x.q() > 10) throw ParamError("to_text: text form requires q <= 10");
    static const char kAcgt[] = {'A', 'C', 'G', 'T'};
    std::string s;
    s.reserve(x.size());
    for (Symbol v : x.symbols()) s.push_back(acgt ? kAcgt[v] : static_cast<char>('0' + v));
    return s;
}

inline QString from_text(const std::string& text, unsigned q) {
    if (q > 10) throw ParamError("from_text: text form requires q <= 10");
    std::vector<Symbol> sym;
    sym.reserve(text.size());
    for (char c : text) {
        Symbol v;
        if (c >= '0' && c <= '9') {
            v = static_cast<Symbol>(c - '0');
        } else if (q == 4) {
            switch (c) {
                case 'A': case 'a': v = 0; break;
                case 'C': case 'c': v = 1; break;
                case 'G': case 'g': v = 2; break;
                case 'T': case 't': v = 3; break;
                default: throw ParamError(std::string("from_text: bad character '") + c + "'");
            }
        } else {
            throw ParamError(std::string("from_text: bad character '") + c + "'");
        }
        if (v >= q) throw ParamError("from_text: symbol out of alphabet");
        sym.push_back(v);
    }
    return QString(q, std::move(sym));
}

inline std::ostream& operator<<(std::ostream& os, const QString& x) {
    if (x.q() <= 10) return os << to_text(x);
    os << '[';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << unsigned(x[i]);
    return os << ']';
}

// The separator string 1 0^f 1.
inline QString marker_string(unsigned q, std::size_t f) {
    QString m(q);
    m.push_back(1);
    for (std::size_t i = 0; i < f; ++i) m.push_back(0);
    m.push_back(1);
    return m;
}

inline QString random_qstring(unsigned q, std::size_t len, Rng& rng) {
    std::vector<Symbol> sym(len);
    for (auto& s : sym) s = static_cast<Symbol>(rng.below(q));
    return QString(q, std::move(sym));
}

}  // namespace tornpaper
