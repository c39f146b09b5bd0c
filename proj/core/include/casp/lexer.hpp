#pragma once

#include <string>
#include <vector>

#include "casp/bitvec.hpp"
#include "casp/diag.hpp"

namespace casp {

struct Token {
    enum Kind { Ident, IntLit, BVLit, StrLit, Sym, Eof };

    Kind kind = Eof;
    std::string text;  // identifier, symbol spelling, or string contents
    Int ival = 0;      // IntLit value, or BVLit bits
    int bvWidth = 0;   // BVLit width
    Pos pos{};

    bool is(Kind k) const { return kind == k; }
    bool is(Kind k, const char* t) const { return kind == k && text == t; }
};

// Tokenizes a whole source buffer. Comments are // to end of line and
// /* ... */ (non-nesting). A trailing Eof token is always present.
std::vector<Token> lex(const std::string& src);

} // namespace casp
