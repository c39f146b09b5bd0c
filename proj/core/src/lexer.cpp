#include "casp/lexer.hpp"

#include <cctype>
#include <cstring>

namespace casp {

namespace {

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skipSpace();
            if (eof()) break;
            out.push_back(next());
        }
        out.push_back(Token{Token::Eof, "", 0, 0, here()});
        return out;
    }

private:
    const std::string& src_;
    size_t i_ = 0;
    int line_ = 1, col_ = 1;

    bool eof() const { return i_ >= src_.size(); }
    char peek(size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }
    Pos here() const { return Pos{line_, col_}; }

    char advance() {
        char c = src_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skipSpace() {
        for (;;) {
            while (!eof() && std::isspace((unsigned char)peek())) advance();
            if (peek() == '/' && peek(1) == '/') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            if (peek() == '/' && peek(1) == '*') {
                Pos start = here();
                advance();
                advance();
                while (!(peek() == '*' && peek(1) == '/')) {
                    if (eof()) throw Diag("LexError", "unterminated comment", start);
                    advance();
                }
                advance();
                advance();
                continue;
            }
            break;
        }
    }

    Token next() {
        Pos pos = here();
        char c = peek();
        if (std::isdigit((unsigned char)c)) return number(pos);
        if (std::isalpha((unsigned char)c) || c == '_') return identifier(pos);
        if (c == '"') return stringLit(pos);
        return symbol(pos);
    }

    Token number(Pos pos) {
        if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'x')) {
            bool hex = peek(1) == 'x';
            advance();
            advance();
            std::string digits;
            while (!eof() && std::isxdigit((unsigned char)peek())) digits += advance();
            if (digits.empty())
                throw Diag("LexError", "malformed bitvector literal", pos);
            Int bits = 0;
            for (char d : digits) {
                int v;
                if (d >= '0' && d <= '9') v = d - '0';
                else v = std::tolower((unsigned char)d) - 'a' + 10;
                if (!hex && v > 1)
                    throw Diag("LexError", "bad digit in binary literal", pos);
                bits = bits * (hex ? 16 : 2) + v;
            }
            int width = hex ? 4 * (int)digits.size() : (int)digits.size();
            return Token{Token::BVLit, (hex ? "0x" : "0b") + digits, bits, width, pos};
        }
        std::string digits;
        while (!eof() && std::isdigit((unsigned char)peek())) digits += advance();
        return Token{Token::IntLit, digits, Int(digits), 0, pos};
    }

    Token identifier(Pos pos) {
        std::string s;
        while (!eof() && (std::isalnum((unsigned char)peek()) || peek() == '_' ||
                          peek() == '\''))
            s += advance();
        // bitvector operators are spelled like identifiers followed by a
        // comparison/arithmetic character, e.g. b+ or bs<=
        if ((s == "b" || s == "bs") && strchr("+-*/<>", peek())) {
            s += advance();
            if ((s.back() == '<' || s.back() == '>') && peek() == '=') s += advance();
            return Token{Token::Sym, s, 0, 0, pos};
        }
        // frame-clause keywords contain a hyphen
        if ((s == "reg" || s == "mem") && peek() == '-' &&
            src_.compare(i_ + 1, 6, "modify") == 0) {
            advance();
            for (int k = 0; k < 6; ++k) advance();
            return Token{Token::Ident, s + "-modify", 0, 0, pos};
        }
        return Token{Token::Ident, s, 0, 0, pos};
    }

    Token stringLit(Pos pos) {
        advance();  // opening quote
        std::string s;
        for (;;) {
            if (eof()) throw Diag("LexError", "unterminated string", pos);
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                if (eof()) throw Diag("LexError", "unterminated string", pos);
                char e = advance();
                switch (e) {
                case 'n': s += '\n'; break;
                case 't': s += '\t'; break;
                case '\\': s += '\\'; break;
                case '"': s += '"'; break;
                default:
                    throw Diag("LexError", std::string("bad escape '\\") + e + "'", pos);
                }
            } else {
                s += c;
            }
        }
        return Token{Token::StrLit, s, 0, 0, pos};
    }

    Token symbol(Pos pos) {
        static const char* threes[] = {">>s"};
        static const char* twos[] = {";;", "<=", ">=", "==", "!=", "&&", "||",
                                     "^^", "<-", "->", "..", "<<", ">>"};
        for (const char* t : threes) {
            if (src_.compare(i_, 3, t) == 0) {
                advance(); advance(); advance();
                return Token{Token::Sym, t, 0, 0, pos};
            }
        }
        for (const char* t : twos) {
            if (src_.compare(i_, 2, t) == 0) {
                advance(); advance();
                return Token{Token::Sym, t, 0, 0, pos};
            }
        }
        char c = advance();
        static const std::string singles = "()[]{},;:*+-/<>=!~|&^.$";
        if (singles.find(c) == std::string::npos)
            throw Diag("LexError", std::string("unexpected character '") + c + "'", pos);
        return Token{Token::Sym, std::string(1, c), 0, 0, pos};
    }
};

} // namespace

std::vector<Token> lex(const std::string& src) { return Lexer(src).run(); }

} // namespace casp
