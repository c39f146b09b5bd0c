#include <doctest.h>

#include <casp/interp.hpp>
#include <casp/parser.hpp>
#include <casp/stateio.hpp>
#include <casp/typecheck.hpp>

#include "gen.hpp"

using namespace casp;

namespace {

// Machine with registers and a byte-addressed memory region, for the
// fetch/store failure table.
const char* kMemMachine = R"(
let wordsize : int = 8;;
letstate r1 : 8 bit loc txt "r1";;
letstate heap : 8 bit 4 len 8 ref with hp;;
letstate wide : 16 bit 2 len 8 ref;;
)";

struct Fixture {
    Interp I;

    explicit Fixture(const char* src) { I.addDecls(parseMachine(src).decls); }

    Value eval(const std::string& e) {
        Scope sc;
        return evalExpr(*parseExpr(e), I, sc);
    }

    Outcome exec(const std::string& s) {
        Scope sc;
        return execStmt(*parseStmt(s), I, sc);
    }
};

} // namespace

TEST_CASE("literal and arithmetic evaluation") {
    Fixture f(kMemMachine);
    CHECK(f.eval("2 + 3 * 4") == Value::ofInt(Int(14)));
    CHECK(f.eval("0b0110 b+ 0b0111") == Value::ofBV(BitVec(4, 13)));
    CHECK(f.eval("if 1 < 2 then \"a\" else \"b\"") == Value::ofString("a"));
    CHECK(f.eval("let x : int = 5 in x * x") == Value::ofInt(Int(25)));
}

TEST_CASE("failure table: fetch forms fail as values") {
    Fixture f(kMemMachine);
    // width mismatch with the region's cell width
    CHECK(f.eval("[[heap, 0]]:16").isFail());
    CHECK(!f.eval("[[heap, 0]]:8").isFail());
    // out-of-store addresses
    CHECK(f.eval("[[heap, 4]]:8").isFail());
    CHECK(f.eval("[[heap, 1000]]:8").isFail());
    // unaligned cell offsets in a 16-bit region (cells sit at 0 and 2)
    CHECK(!f.eval("[[wide, 2]]:16").isFail());
    CHECK(f.eval("[[wide, 1]]:16").isFail());
    // non-pointer address
    CHECK(f.eval("[0b00000000]:8").isFail());
}

TEST_CASE("failure table: store forms crash") {
    Fixture f(kMemMachine);
    CHECK(f.exec("[[heap, 0]]:8 <- 0b10100101") == Outcome::Done);
    CHECK(f.eval("[[heap, 0]]:8") == Value::ofBV(BitVec(8, 0xa5)));
    // width mismatch
    CHECK(f.exec("[[heap, 0]]:16 <- 0b1010010110100101") == Outcome::Crash);
    // out-of-store
    CHECK(f.exec("[[heap, 64]]:8 <- 0b00000000") == Outcome::Crash);
    // non-pointer address
    CHECK(f.exec("[0b00000000]:8 <- 0b00000000") == Outcome::Crash);
    // value width must match the cell too
    CHECK(f.exec("[[heap, 1]]:8 <- 0b0000") == Outcome::Crash);
}

TEST_CASE("failure table: txt is partial") {
    Fixture f(kMemMachine);
    CHECK(f.eval("r1.txt") == Value::ofString("r1"));
    // only registers carry assembly text
    CHECK(f.eval("(0b0011).txt").isFail());
    CHECK(f.eval("hp.txt").isFail());
}

TEST_CASE("failure table: division by zero and pointer multiply") {
    Fixture f(kMemMachine);
    CHECK(f.eval("1 / 0").isFail());
    CHECK(f.eval("0b0110 b/ 0b0000").isFail());
    CHECK(f.eval("hp b* 0b00000010").isFail());
    CHECK(f.eval("hp b/ 0b00000010").isFail());
    CHECK(f.eval("4 / 2") == Value::ofInt(Int(2)));
}

TEST_CASE("pointer arithmetic") {
    Fixture f(kMemMachine);
    CHECK(f.eval("hp b+ 0b00000010") == Value::ofPtr(Pointer{"heap", 2, 8}));
    CHECK(f.eval("0b00000010 b+ hp") == Value::ofPtr(Pointer{"heap", 2, 8}));
    CHECK(f.eval("(hp b+ 0b00000011) b- 0b00000001") ==
          Value::ofPtr(Pointer{"heap", 2, 8}));
    // pointer difference within one region is a plain bitvector
    CHECK(f.eval("(hp b+ 0b00000011) b- hp") == Value::ofBV(BitVec(8, 3)));
    // across regions it fails
    CHECK(f.eval("hp b- [wide, 0]").isFail());
    // equality between a pointer and a bitvector is false, not an error
    CHECK(f.eval("hp == 0b00000000") == Value::ofBool(false));
    CHECK(f.eval("hp == [heap, 0]") == Value::ofBool(true));
}

TEST_CASE("logical connectives are strict in both operands") {
    Fixture f(kMemMachine);
    CHECK(f.eval("false && (1 / 0 == 1)").isFail());
    CHECK(f.eval("true || (1 / 0 == 1)").isFail());
    CHECK(f.eval("false && true") == Value::ofBool(false));
}

TEST_CASE("bit and slice access on pointers fails") {
    Fixture f(kMemMachine);
    CHECK(f.eval("hp[0]").isFail());
    CHECK(f.eval("hp[0:4]").isFail());
    CHECK(f.eval("0b0110[1]") == Value::ofBV(BitVec(1, 1)));
    CHECK(f.eval("0b0110[1:3]") == Value::ofBV(BitVec(2, 0b11)));
}

TEST_CASE("statements: assert, conditionals, loops, lets") {
    Fixture f(kMemMachine);
    CHECK(f.exec("assert(1 == 1)") == Outcome::Done);
    CHECK(f.exec("assert(1 == 2)") == Outcome::Crash);
    CHECK(f.exec("assert(1 / 0 == 1)") == Outcome::Crash);
    CHECK(f.exec("crash") == Outcome::Crash);
    CHECK(f.exec("if 0b0 == 0b0 then { *r1 <- 0b00000001 } else { crash }") ==
          Outcome::Done);
    CHECK(f.eval("*r1") == Value::ofBV(BitVec(8, 1)));
    // a non-boolean condition crashes
    CHECK(f.exec("if 3 then { skip } else { skip }") == Outcome::Crash);
    CHECK(f.exec("for i in 1 .. 3 do *r1 <- *r1 b+ 0b00000001 done") ==
          Outcome::Done);
    CHECK(f.eval("*r1") == Value::ofBV(BitVec(8, 4)));
    // a let statement binds even the failure value without crashing
    CHECK(f.exec("let x : int = 1 / 0 in skip") == Outcome::Done);
    CHECK(f.exec("let x : int = 1 / 0 in assert(x == 1)") == Outcome::Crash);
    // register assignment needs a register and a width-matched value
    CHECK(f.exec("*r1 <- 0b0000") == Outcome::Crash);
    CHECK(f.exec("*0b00000000 <- 0b00000000") == Outcome::Crash);
}

TEST_CASE("declaration evaluation: lets, state, functions, procedures") {
    Fixture f(R"(
let two : int = 2;;
letstate r1 : 4 bit loc;;
def double(x: int) : int = x * two;;
proc bump(v: 4 bit) { *r1 <- *r1 b+ v };;
)");
    CHECK(f.eval("double(21)") == Value::ofInt(Int(42)));
    CHECK(f.exec("bump(0b0011)") == Outcome::Done);
    CHECK(f.eval("*r1") == Value::ofBV(BitVec(4, 3)));
    // a failing top-level let is a hard diagnostic, not a bound failure
    Interp I;
    CHECK_THROWS_AS(I.addDecls(parseMachine("let x : int = 1 / 0;;").decls), Diag);
}

TEST_CASE("programs run against the machine and render to text") {
    Interp I;
    I.addDecls(parseMachine(gen::toyMachineSrc()).decls);
    applyStateText("reg r1 = 0b01\nreg r2 = 0b10", I);
    Program p = parseProgram("XOR r1 r2\nXOR r2 r1\nXOR r1 r2");
    CHECK(runProgram(p, I) == Outcome::Done);
    Scope sc;
    CHECK(evalExpr(*parseExpr("*r1"), I, sc) == Value::ofBV(BitVec(2, 2)));
    CHECK(evalExpr(*parseExpr("*r2"), I, sc) == Value::ofBV(BitVec(2, 1)));
    CHECK(extractText(p, I) ==
          Value::ofString("xor r1, r2\nxor r2, r1\nxor r1, r2\n"));
    CHECK_THROWS_AS(runProgram(parseProgram("BOGUS r1"), I), Diag);
    CHECK_THROWS_AS(runProgram(parseProgram("XOR r1"), I), Diag);
}

TEST_CASE("state files parse, apply, and render back") {
    Interp I;
    I.addDecls(parseMachine(kMemMachine).decls);
    applyStateText("reg r1 = [heap, 2]\nmem heap[1] = 0b11110000", I);
    Scope sc;
    CHECK(evalExpr(*parseExpr("*r1"), I, sc) == Value::ofPtr(Pointer{"heap", 2, 8}));
    CHECK(evalExpr(*parseExpr("[[heap, 1]]:8"), I, sc) ==
          Value::ofBV(BitVec(8, 0xf0)));
    std::string text = renderState(I);
    CHECK(text.find("reg r1 = [heap, 2]") != std::string::npos);
    CHECK(text.find("mem heap[1] = 0b11110000") != std::string::npos);
    CHECK_THROWS_AS(applyStateText("reg nosuch = 0b0", I), Diag);
    CHECK_THROWS_AS(applyStateText("mem heap[0] = 0b0", I), Diag);  // width
}

TEST_CASE("builtins") {
    Fixture f(kMemMachine);
    CHECK(f.eval("hex(0b11110000)") == Value::ofString("0xf0"));
    CHECK(f.eval("bin(0b101)") == Value::ofString("0b101"));
    CHECK(f.eval("dec(0b101)") == Value::ofString("5"));
    CHECK(f.eval("hex(255)") == Value::ofString("0xff"));
    CHECK(f.eval("format(\"$1 and $2\", \"a\", \"b\")") ==
          Value::ofString("a and b"));
    CHECK(f.eval("format(\"$1\", 3)").isFail());  // args must be strings
    CHECK(f.eval("lbl(hp)") == Value::ofString("hp"));
    CHECK(f.eval("lbl(hp b+ 0b00000001)").isFail());  // not the region base
    CHECK(f.eval("isptr(hp)") == Value::ofBool(true));
    CHECK(f.eval("isptr(0b00000000)") == Value::ofBool(false));
    CHECK(f.eval("|empty(8)|") == Value::ofInt(Int(0)));
    CHECK(f.eval("|{r1}|") == Value::ofInt(Int(1)));
    CHECK(f.eval("r1 in {r1}") == Value::ofBool(true));
}

TEST_CASE("builtin roundtrips at widths one through eight") {
    Fixture f(kMemMachine);
    Scope sc;
    for (int w = 1; w <= 8; ++w) {
        for (long long v = 0; v < (1LL << w); ++v) {
            // bv_to_uint . uint_to_bv_l is the identity on [0, 2^w)
            auto e = mkExpr(ex::App{
                "bv_to_uint", {mkExpr(ex::App{"uint_to_bv_l",
                                              {gen::litInt(w), gen::litInt(v)}})}});
            CHECK(evalExpr(*e, f.I, sc) == Value::ofInt(Int(v)));
            for (int nw = 1; nw <= 8; ++nw) {
                // bv_to_len is reduction modulo 2^nw
                auto r = mkExpr(ex::App{"bv_to_len", {gen::litInt(nw), gen::litBV(w, v)}});
                CHECK(evalExpr(*r, f.I, sc) ==
                      Value::ofBV(BitVec(nw, Int(v % (1LL << nw)))));
            }
        }
    }
}

TEST_CASE("type-soundness fuzz: well-typed expressions evaluate to their type") {
    Machine m = parseMachine(gen::toyMachineSrc());
    TypeEnvs envs = typeMachine(m);
    Interp I;
    I.addDecls(m.decls);
    Scope sc;
    gen::Rng g(31337);
    for (int i = 0; i < 2000; ++i) {
        gen::TyTarget t = gen::genTarget(g);
        ExprPtr e = gen::genTyped(g, t, 4);
        TypePtr st = typeExpr(*e, envs);
        REQUIRE(*st == *t.toType());
        Value v = evalExpr(*e, I, sc);
        CHECK(gen::valueMatches(v, *st));
    }
}
