#ifndef DYADIC_CODING_HPP
#define DYADIC_CODING_HPP

#include <string>

#include "dyadic/subbase.hpp"

namespace dyadic {

/// A point together with its {0,1,⊥}-code over the first `length` indices.
struct CodedPoint {
  Rational point;
  TernaryWord word;
  std::size_t length = 0;

  std::string render(bool ascii = true) const { return word.render(length, ascii); }
  std::size_t bottom_count() const { return length - word.digits().size(); }
};

/// Digit n is 0 or 1 when x lies in S_{n,0} or S_{n,1}, and ⊥ when x lies in
/// neither (x is then on the common boundary of the pair).
inline CodedPoint encode_point(const DyadicSubbase& subbase, const Rational& x, std::size_t length) {
  if (!subbase.space()->contains(x)) throw precondition_error("point " + x.str() + " is not in the space");
  if (length > subbase.size()) {
    throw precondition_error("code length " + std::to_string(length) + " exceeds subbase size " +
                             std::to_string(subbase.size()));
  }
  CodedPoint c{x, {}, length};
  for (std::size_t n = 0; n < length; ++n) {
    if (subbase[n].zero.contains(x)) c.word.set(n, 0);
    else if (subbase[n].one.contains(x)) c.word.set(n, 1);
  }
  return c;
}

/// S(σ), the base set named by a word.
inline SymbolicSet decode_word(const DyadicSubbase& subbase, const TernaryWord& word) {
  return sigma_sets(subbase, word).open;
}

}  // namespace dyadic

#endif  // DYADIC_CODING_HPP
