#include "casp/stateio.hpp"

#include "casp/lexer.hpp"
#include "casp/parser.hpp"

namespace casp {

namespace {

uint32_t regByName(const Interp& I, const std::string& name, Pos pos) {
    for (const auto& [id, n] : I.state.regNames)
        if (n == name) return id;
    throw Diag("UnknownRegister", "no register '" + name + "'", pos);
}

} // namespace

void applyStateText(const std::string& src, Interp& I) {
    auto toks = lex(src);
    size_t i = 0;
    auto peek = [&]() -> const Token& { return toks[i]; };
    auto take = [&]() -> const Token& { return toks[i < toks.size() - 1 ? i++ : i]; };
    auto expectSym = [&](const char* s) {
        if (!peek().is(Token::Sym, s))
            throw Diag("StateParseError", std::string("expected '") + s + "'",
                       peek().pos);
        take();
    };
    auto parseWord = [&](int width, Pos pos) -> Value {
        if (peek().is(Token::BVLit)) {
            const Token& t = take();
            if (t.bvWidth != width)
                throw Diag("StateParseError",
                           "literal width " + std::to_string(t.bvWidth) +
                               " does not match cell width " + std::to_string(width),
                           t.pos);
            return Value::ofBV(BitVec(t.bvWidth, t.ival));
        }
        if (peek().is(Token::Sym, "[")) {
            take();
            if (!peek().is(Token::Ident))
                throw Diag("StateParseError", "expected region name", peek().pos);
            std::string region = take().text;
            expectSym(",");
            long long sign = 1;
            if (peek().is(Token::Sym, "-")) {
                take();
                sign = -1;
            }
            if (!peek().is(Token::IntLit))
                throw Diag("StateParseError", "expected offset", peek().pos);
            long long off = sign * (long long)take().ival;
            expectSym("]");
            auto it = I.state.regions.find(region);
            if (it == I.state.regions.end())
                throw Diag("UnknownRegion", "no region '" + region + "'", pos);
            if (it->second.ptrWidth != width)
                throw Diag("StateParseError",
                           "pointer width does not match cell width", pos);
            return Value::ofPtr(Pointer{region, off, width});
        }
        throw Diag("StateParseError", "expected a bitvector literal or pointer",
                   peek().pos);
    };

    while (!peek().is(Token::Eof)) {
        Pos pos = peek().pos;
        if (peek().is(Token::Ident, "reg")) {
            take();
            if (!peek().is(Token::Ident))
                throw Diag("StateParseError", "expected register name", peek().pos);
            std::string name = take().text;
            expectSym("=");
            uint32_t id = regByName(I, name, pos);
            const Value& cur = I.state.regs.at(id);
            int width = cur.is<BitVec>() ? cur.as<BitVec>().width()
                                         : cur.as<Pointer>().width;
            I.state.regs[id] = parseWord(width, pos);
        } else if (peek().is(Token::Ident, "mem")) {
            take();
            if (!peek().is(Token::Ident))
                throw Diag("StateParseError", "expected region name", peek().pos);
            std::string region = take().text;
            expectSym("[");
            if (!peek().is(Token::IntLit))
                throw Diag("StateParseError", "expected offset", peek().pos);
            long long off = (long long)take().ival;
            expectSym("]");
            expectSym("=");
            auto rit = I.state.regions.find(region);
            if (rit == I.state.regions.end())
                throw Diag("UnknownRegion", "no region '" + region + "'", pos);
            auto cit = I.state.mem.find(MemKey{region, off});
            if (cit == I.state.mem.end())
                throw Diag("StateParseError",
                           "offset " + std::to_string(off) + " is not a cell of '" +
                               region + "'", pos);
            cit->second = parseWord(rit->second.cellWidth, pos);
        } else {
            throw Diag("StateParseError", "expected 'reg' or 'mem'", peek().pos);
        }
    }
}

void applyStateFile(const std::string& path, Interp& I) {
    applyStateText(readFile(path), I);
}

std::string renderState(const Interp& I) {
    std::string out;
    for (const auto& [id, v] : I.state.regs) {
        auto nit = I.state.regNames.find(id);
        std::string name = nit == I.state.regNames.end()
                               ? "<r" + std::to_string(id) + ">"
                               : nit->second;
        out += "reg " + name + " = " + v.show() + "\n";
    }
    for (const auto& [key, v] : I.state.mem) {
        out += "mem " + key.region + "[" + std::to_string(key.offset) + "] = " +
               v.show() + "\n";
    }
    return out;
}

} // namespace casp
