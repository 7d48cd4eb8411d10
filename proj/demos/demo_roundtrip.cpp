// End-to-end walkthrough: build a code, encode a message, tear it with an
// adversarial segmentation, decode it back, and print what happened.

#include <iostream>

#include "tornpaper/channel.hpp"
#include "tornpaper/codec.hpp"

using namespace tornpaper;

int main() {
    // q=2, strands of 124 symbols, segments of 15..20 symbols, marker 10001
    CodeParams p = derive_params(2, 124, 1, 15, 20, 3);
    std::cout << "code: n=" << p.n << " Lmin=" << p.Lmin << " Lmax=" << p.Lmax
              << " payload=" << p.message_len() << " symbols, redundancy=" << code_redundancy(p)
              << "\n";

    Rng rng(2024);
    QString message = random_qstring(p.q, p.message_len(), rng);
    std::cout << "message:  " << to_text(message) << "\n";

    Codeword cw = encode(message, p);
    std::cout << "codeword: " << to_text(cw.strand(0)) << "\n";

    AdversaryStrategy adversary;
    adversary.kind = AdversaryStrategy::Kind::index_straddle;  // cut inside encoded indices
    adversary.seed = 7;
    SegmentCollection received = tear(cw, adversary);
    std::cout << "channel produced " << received.size() << " unordered segments:\n";
    for (const auto& u : received.segments()) std::cout << "  " << to_text(u) << "\n";

    DecodeStats stats;
    QString decoded = decode(received, p, &stats);
    std::cout << "decoded:  " << to_text(decoded) << "\n";
    std::cout << (decoded == message ? "round trip OK" : "round trip FAILED") << " ("
              << stats.placed << " placed, " << stats.discarded << " discarded)\n";
    return decoded == message ? 0 : 1;
}
