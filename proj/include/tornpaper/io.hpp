#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tornpaper/codec.hpp"
#include "tornpaper/segmentation.hpp"

namespace tornpaper {

// Codeword file: optional '#'-prefixed header lines, then one strand per
// line in alphabet text. Segments file: one segment per line, no metadata.

inline void write_codeword_file(const std::string& path, const Codeword& cw,
                                const std::string& header = "", bool acgt = false) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    if (!header.empty()) out << "# " << header << "\n";
    for (const auto& z : cw.strands) out << to_text(z, acgt) << "\n";
}

struct CodewordFile {
    std::vector<QString> strands;
    std::string header;  // first '#' line, if any, without the marker
};

inline CodewordFile read_codeword_file(const std::string& path, unsigned q) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    CodewordFile out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (out.header.empty()) out.header = line.substr(line.find_first_not_of("# "));
            continue;
        }
        out.strands.push_back(from_text(line, q));
    }
    if (out.strands.empty()) throw IoError("no strands in " + path);
    return out;
}

inline void write_segments_file(const std::string& path, const SegmentCollection& segments,
                                bool acgt = false) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (const auto& s : segments.segments()) out << to_text(s, acgt) << "\n";
}

inline SegmentCollection read_segments_file(const std::string& path, unsigned q) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    SegmentCollection out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.add(from_text(line, q));
    }
    return out;
}

// Binary <-> q-ary payload mapping: each byte expands to ceil(log_q 256)
// base-q digits, big-endian (q=2: 8 bits MSB-first; q=4: 4 two-bit digits).
inline std::size_t digits_per_byte(unsigned q) {
    std::size_t d = 0;
    std::uint64_t v = 1;
    while (v < 256) {
        v *= q;
        ++d;
    }
    return d;
}

// Capacity in whole bytes of a payload of `symbols` q-ary symbols.
inline std::size_t payload_capacity_bytes(unsigned q, std::size_t symbols) {
    return symbols / digits_per_byte(q);
}

inline QString bytes_to_symbols(const std::vector<std::uint8_t>& bytes, unsigned q,
                                std::size_t payload_symbols) {
    const std::size_t d = digits_per_byte(q);
    if (bytes.size() * d > payload_symbols)
        throw ParamError("message too large: " + std::to_string(bytes.size()) + " bytes > " +
                         std::to_string(payload_capacity_bytes(q, payload_symbols)) +
                         "-byte capacity");
    QString out(q);
    for (std::uint8_t b : bytes) {
        std::vector<Symbol> digits(d);
        unsigned v = b;
        for (std::size_t i = d; i-- > 0;) {
            digits[i] = static_cast<Symbol>(v % q);
            v /= q;
        }
        for (Symbol s : digits) out.push_back(s);
    }
    while (out.size() < payload_symbols) out.push_back(0);  // zero padding
    return out;
}

inline std::vector<std::uint8_t> symbols_to_bytes(const QString& x, std::size_t byte_count) {
    const std::size_t d = digits_per_byte(x.q());
    if (byte_count * d > x.size()) throw ParamError("symbols_to_bytes: payload too short");
    std::vector<std::uint8_t> out(byte_count);
    for (std::size_t i = 0; i < byte_count; ++i) {
        unsigned v = 0;
        for (std::size_t j = 0; j < d; ++j) v = v * x.q() + x[i * d + j];
        if (v > 255) throw CorruptionError("symbols_to_bytes: byte value out of range");
        out[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

inline std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string s = ss.str();
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

inline void write_binary_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

}  // namespace tornpaper
