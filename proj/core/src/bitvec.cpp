#include "casp/bitvec.hpp"

#include <cassert>
#include <stdexcept>

namespace casp {

namespace {
Int maskFor(int width) { return (Int(1) << width) - 1; }
} // namespace

BitVec::BitVec(int width, Int bits) : width_(width), bits_(std::move(bits)) {
    if (width_ < 1)
        throw std::invalid_argument("bitvector width must be positive");
    // reduce mod 2^width; operator% keeps the dividend's sign
    Int m = Int(1) << width_;
    bits_ %= m;
    if (bits_ < 0)
        bits_ += m;
}

Int BitVec::toSigned() const {
    if (bit(width_ - 1))
        return bits_ - (Int(1) << width_);
    return bits_;
}

BitVec BitVec::ones(int width) { return BitVec(width, maskFor(width)); }

BitVec BitVec::add(const BitVec& o) const {
    assert(width_ == o.width_);
    return BitVec(width_, bits_ + o.bits_);
}

BitVec BitVec::sub(const BitVec& o) const {
    assert(width_ == o.width_);
    return BitVec(width_, bits_ - o.bits_);
}

BitVec BitVec::mul(const BitVec& o) const {
    assert(width_ == o.width_);
    return BitVec(width_, bits_ * o.bits_);
}

std::optional<BitVec> BitVec::udiv(const BitVec& o) const {
    assert(width_ == o.width_);
    if (o.bits_ == 0)
        return std::nullopt;
    return BitVec(width_, bits_ / o.bits_);
}

BitVec BitVec::neg() const { return BitVec(width_, -bits_); }

BitVec BitVec::bnot() const { return BitVec(width_, ~bits_); }

BitVec BitVec::band(const BitVec& o) const {
    assert(width_ == o.width_);
    return BitVec(width_, bits_ & o.bits_);
}

BitVec BitVec::bor(const BitVec& o) const {
    assert(width_ == o.width_);
    return BitVec(width_, bits_ | o.bits_);
}

BitVec BitVec::bxor(const BitVec& o) const {
    assert(width_ == o.width_);
    return BitVec(width_, bits_ ^ o.bits_);
}

BitVec BitVec::shl(const BitVec& o) const {
    assert(width_ == o.width_);
    if (o.bits_ >= width_)
        return zeros(width_);
    return BitVec(width_, bits_ << static_cast<int>(o.bits_));
}

BitVec BitVec::lshr(const BitVec& o) const {
    assert(width_ == o.width_);
    if (o.bits_ >= width_)
        return zeros(width_);
    return BitVec(width_, bits_ >> static_cast<int>(o.bits_));
}

BitVec BitVec::ashr(const BitVec& o) const {
    assert(width_ == o.width_);
    bool signBit = bit(width_ - 1);
    if (o.bits_ >= width_)
        return signBit ? ones(width_) : zeros(width_);
    int amt = static_cast<int>(o.bits_);
    Int shifted = bits_ >> amt;
    if (signBit) {
        // fill vacated high bits with ones
        Int fill = maskFor(amt) << (width_ - amt);
        shifted |= fill;
    }
    return BitVec(width_, shifted);
}

bool BitVec::bit(int i) const {
    assert(i >= 0 && i < width_);
    return boost::multiprecision::bit_test(bits_, static_cast<unsigned>(i));
}

BitVec BitVec::slice(int lo, int hi) const {
    assert(0 <= lo && lo < hi && hi <= width_);
    return BitVec(hi - lo, bits_ >> lo);
}

BitVec BitVec::resize(int newWidth) const { return BitVec(newWidth, bits_); }

std::string BitVec::toBinaryString() const {
    std::string s = "0b";
    for (int i = width_ - 1; i >= 0; --i)
        s += bit(i) ? '1' : '0';
    return s;
}

std::string BitVec::toHexString() const {
    static const char* digits = "0123456789abcdef";
    int ndigits = (width_ + 3) / 4;
    std::string s = "0x";
    for (int i = ndigits - 1; i >= 0; --i) {
        unsigned nib = static_cast<unsigned>((bits_ >> (i * 4)) & 0xf);
        s += digits[nib];
    }
    return s;
}

std::string BitVec::toDecimalString() const { return bits_.str(); }

} // namespace casp
