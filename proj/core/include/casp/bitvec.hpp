#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace casp {

using Int = boost::multiprecision::cpp_int;

// Fixed-width two's-complement bitvector, the universal machine word.
// Width is at least 1; the stored magnitude is always reduced mod 2^width.
class BitVec {
public:
    BitVec() : width_(1), bits_(0) {}
    BitVec(int width, Int bits);

    int width() const { return width_; }
    const Int& bits() const { return bits_; }

    // Unsigned and two's-complement signed readings of the bits.
    Int toUnsigned() const { return bits_; }
    Int toSigned() const;

    static BitVec zeros(int width) { return BitVec(width, 0); }
    static BitVec ones(int width);

    // Arithmetic, modular at this width. Widths of both operands must match.
    BitVec add(const BitVec& o) const;
    BitVec sub(const BitVec& o) const;
    BitVec mul(const BitVec& o) const;
    // Unsigned division; nullopt on zero divisor.
    std::optional<BitVec> udiv(const BitVec& o) const;

    BitVec neg() const;   // two's-complement negation
    BitVec bnot() const;  // bitwise complement

    BitVec band(const BitVec& o) const;
    BitVec bor(const BitVec& o) const;
    BitVec bxor(const BitVec& o) const;

    // Shift amount is the unsigned value of `o`; amounts >= width saturate.
    BitVec shl(const BitVec& o) const;
    BitVec lshr(const BitVec& o) const;
    BitVec ashr(const BitVec& o) const;

    bool bit(int i) const;                // LSB-0 indexing, 0 <= i < width
    BitVec slice(int lo, int hi) const;   // half-open [lo, hi), width hi-lo

    // Same value at a new width, up to what the new width can represent.
    BitVec resize(int newWidth) const;

    bool operator==(const BitVec& o) const {
        return width_ == o.width_ && bits_ == o.bits_;
    }

    std::string toBinaryString() const;   // "0b...", exactly width digits
    std::string toHexString() const;      // "0x...", ceil(width/4) digits
    std::string toDecimalString() const;  // unsigned decimal

private:
    int width_;
    Int bits_;
};

} // namespace casp
