#pragma once

// Dynamic bitstrings processed in 64-bit chunks. Used for ray-facet
// incidence (one bit per facet or per ray) and the candidate strings of the
// graph-based adjacency test.

#include <bit>
#include <cstdint>
#include <cstring>
#include <vector>

namespace subcone {

class BitVec {
 public:
  using Word = std::uint64_t;
  static constexpr size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(size_t nbits, bool ones = false)
      : n_(nbits), w_(words_for(nbits), ones ? ~Word(0) : Word(0)) {
    trim();
  }

  size_t size() const { return n_; }
  size_t word_count() const { return w_.size(); }
  const Word* words() const { return w_.data(); }
  Word* words() { return w_.data(); }

  void reserve_bits(size_t nbits) { w_.reserve(words_for(nbits)); }

  bool test(size_t i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(size_t i) { w_[i / kWordBits] |= Word(1) << (i % kWordBits); }
  void clear(size_t i) { w_[i / kWordBits] &= ~(Word(1) << (i % kWordBits)); }
  void assign_bit(size_t i, bool v) {
    if (v)
      set(i);
    else
      clear(i);
  }

  void push_back(bool v) {
    if (n_ % kWordBits == 0) w_.push_back(0);
    ++n_;
    if (v) set(n_ - 1);
  }

  size_t count() const {
    size_t c = 0;
    for (Word x : w_) c += std::popcount(x);
    return c;
  }

  bool none() const {
    for (Word x : w_)
      if (x) return false;
    return true;
  }

  // popcount of (a AND b); the strings must have equal length.
  static size_t and_count(const BitVec& a, const BitVec& b) {
    size_t c = 0;
    for (size_t k = 0; k < a.w_.size(); ++k) c += std::popcount(a.w_[k] & b.w_[k]);
    return c;
  }

  static BitVec and_of(const BitVec& a, const BitVec& b) {
    BitVec r(a.n_);
    for (size_t k = 0; k < a.w_.size(); ++k) r.w_[k] = a.w_[k] & b.w_[k];
    return r;
  }

  // Append the positions of all set bits to `out`.
  void collect_set_bits(std::vector<int>& out) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      Word x = w_[k];
      while (x) {
        out.push_back(int(k * kWordBits + std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

 private:
  static size_t words_for(size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }
  void trim() {
    if (n_ % kWordBits) w_.back() &= (Word(1) << (n_ % kWordBits)) - 1;
  }

  size_t n_ = 0;
  std::vector<Word> w_;
};

}  // namespace subcone
