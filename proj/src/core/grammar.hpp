#pragma once

#include <string_view>
#include <vector>

#include "ring_element.hpp"

namespace geuclid {

// Text forms shared by the CLI, scenario files and test fixtures.
//
//   element := ['+'|'-'] term (('+'|'-') term)*
//   term    := scalar '*' word | scalar | word
//   scalar  := integer | integer '/' integer
//   word    := '1' | letter+        (uppercase or a trailing ⁻¹ inverts)
//   vector  := '(' element (';' element)* ')'
//
// A bare scalar stands for a multiple of the identity and `0` is the zero
// element. `rank` limits the alphabet to the first `rank` letters; 0 means
// the full alphabet a..z.

/// Letter sequence with optional whitespace, freely reduced.
Word parse_word(std::string_view text, int rank = 0);
RingElement parse_element(std::string_view text, Domain domain, int rank = 0);
RingVector parse_vector(std::string_view text, Domain domain, int rank = 0);
/// Elements separated by ',' or newlines (for generator lists).
std::vector<RingElement> parse_element_list(std::string_view text, Domain domain, int rank = 0);
/// Vectors separated by ',' or newlines.
std::vector<RingVector> parse_vector_list(std::string_view text, Domain domain, int rank = 0);
/// Comma-separated words, e.g. the extra generators of a Cayley ball.
std::vector<Word> parse_word_list(std::string_view text, int rank = 0);

}  // namespace geuclid
