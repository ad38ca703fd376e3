#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trapbench/rng.hpp"

namespace trapbench {

/// Fixed-length binary genome, packed 64 bits per word.
/// Length is set at construction and never changes; operations treat
/// bitstrings as immutable values (mutating helpers exist to build new
/// ones cheaply).
class Bitstring {
  public:
    Bitstring() = default;
    explicit Bitstring(std::size_t length)
        : len_(length), words_((length + 63) / 64, 0) {}

    std::size_t size() const { return len_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool v) {
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= bit;
        else
            words_[i >> 6] &= ~bit;
    }

    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t count_ones() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_)
            n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// Number of ones in positions [begin, end).
    std::size_t count_range(std::size_t begin, std::size_t end) const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    /// Renders position 0 first.
    std::string to_string() const;
    static Bitstring parse(std::string_view s);

    friend bool operator==(const Bitstring& a, const Bitstring& b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

  private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;

    // Bits past len_ in the last word are kept zero.
    void clear_tail() {
        if (len_ & 63)
            words_.back() &= (std::uint64_t{1} << (len_ & 63)) - 1;
    }

    friend Bitstring random_bitstring(std::size_t, Rng&);
    friend Bitstring complement(const Bitstring&);
};

std::size_t unitation(const Bitstring& x);

/// Positions where a and b differ. Throws std::invalid_argument on
/// length mismatch.
std::size_t hamming(const Bitstring& a, const Bitstring& b);

Bitstring xor_bits(const Bitstring& a, const Bitstring& b);

/// XOR b into a without allocating.
void xor_inplace(Bitstring& a, const Bitstring& b);

Bitstring complement(const Bitstring& x);

/// Each bit independently 0 or 1 with probability 1/2. L must be >= 1.
Bitstring random_bitstring(std::size_t length, Rng& rng);

} // namespace trapbench
