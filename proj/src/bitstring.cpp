#include "trapbench/bitstring.hpp"

#include <stdexcept>

namespace trapbench {

std::size_t Bitstring::count_range(std::size_t begin, std::size_t end) const {
    std::size_t n = 0;
    std::size_t w = begin >> 6;
    while (begin < end) {
        const std::size_t word_end = std::min(end, (w + 1) * 64);
        std::uint64_t mask = ~std::uint64_t{0};
        mask <<= (begin & 63);
        if (word_end & 63)
            mask &= (std::uint64_t{1} << (word_end & 63)) - 1;
        n += static_cast<std::size_t>(std::popcount(words_[w] & mask));
        begin = word_end;
        ++w;
    }
    return n;
}

std::string Bitstring::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (test(i))
            s[i] = '1';
    return s;
}

Bitstring Bitstring::parse(std::string_view s) {
    Bitstring x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            x.set(i, true);
        else if (s[i] != '0')
            throw std::invalid_argument("Bitstring::parse: expected 0/1 characters");
    }
    return x;
}

std::size_t unitation(const Bitstring& x) { return x.count_ones(); }

std::size_t hamming(const Bitstring& a, const Bitstring& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming: length mismatch");
    std::size_t n = 0;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i)
        n += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    return n;
}

Bitstring xor_bits(const Bitstring& a, const Bitstring& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("xor: length mismatch");
    Bitstring out = a;
    auto& wo = out.words();
    const auto& wb = b.words();
    for (std::size_t i = 0; i < wo.size(); ++i)
        wo[i] ^= wb[i];
    return out;
}

void xor_inplace(Bitstring& a, const Bitstring& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("xor: length mismatch");
    auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i)
        wa[i] ^= wb[i];
}

Bitstring complement(const Bitstring& x) {
    Bitstring out = x;
    for (auto& w : out.words())
        w = ~w;
    out.clear_tail();
    return out;
}

Bitstring random_bitstring(std::size_t length, Rng& rng) {
    if (length == 0)
        throw std::invalid_argument("random_bitstring: length must be >= 1");
    Bitstring x(length);
    for (auto& w : x.words())
        w = rng.next_u64();
    x.clear_tail();
    return x;
}

} // namespace trapbench
