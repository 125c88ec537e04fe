#pragma once

// Ternary-to-binary block embedding (0 -> 00, 1 -> 01, 2 -> 10), the induced
// three-word block relation over {00,01,10}^*, and the witness word families
// that exercise it.

#include <string>
#include <string_view>

namespace triff {

// Binary words are plain strings over '0'/'1'; embedding output always has
// even length and no block equal to "11".
using BinaryWord = std::string;

// Maps each ternary digit to its two-bit block. Throws on symbols outside
// {0,1,2}.
BinaryWord ternary_to_binary(std::string_view ternary);

// Inverse of ternary_to_binary. Throws on odd length, non-binary characters,
// or a "11" block (user-facing block positions are reported 1-based).
std::string binary_to_ternary(std::string_view binary);

// True iff x, y, z all lie in {00,01,10}^* and some block position carries
// the blocks {00, 01, 10} as a set. Requires three words of equal even
// length. Throws on length mismatch or odd length.
bool relation_r(std::string_view x, std::string_view y, std::string_view z);

struct WitnessTriple {
  BinaryWord x;  // (00)^n 01 (00)^(ell-n-1)
  BinaryWord y;  // (10)^n 00 (00)^(ell-n-1)
  BinaryWord z;  // (10)^n 10 (00)^(ell-n-1)
};

// The length-2*ell triple whose unique relating block position is n (0-based
// block index). Requires 0 <= n < ell.
WitnessTriple witness_family(int n, int ell);

}  // namespace triff
