#include "casp/builtins.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "casp/interp.hpp"

namespace casp {

namespace {

const std::set<std::string> kNames = {
    "empty",   "hex",        "bin",          "dec",  "lbl",
    "format",  "bv_to_len",  "bv_to_uint",   "uint_to_bv_l",
    "isptr",
};

Value fail() { return Value::fail(); }

std::string hexOfInt(const Int& i) {
    std::ostringstream ss;
    if (i < 0)
        ss << "-0x" << std::hex << -i;
    else
        ss << "0x" << std::hex << i;
    return ss.str();
}

std::string binOfInt(Int i) {
    bool neg = i < 0;
    if (neg) i = -i;
    std::string digits;
    if (i == 0) digits = "0";
    while (i > 0) {
        digits += char('0' + (int)(i & 1));
        i >>= 1;
    }
    std::reverse(digits.begin(), digits.end());
    return (neg ? "-0b" : "0b") + digits;
}

std::optional<int> smallInt(const Value& v) {
    if (!v.is<Int>()) return std::nullopt;
    const Int& i = v.as<Int>();
    if (i < 1 || i > 1'000'000) return std::nullopt;
    return (int)i;
}

Value doFormat(const std::vector<Value>& args) {
    if (args.empty() || !args[0].is<std::string>()) return fail();
    const std::string& f = args[0].as<std::string>();
    std::string out;
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] != '$') {
            out += f[i];
            continue;
        }
        // $N substitutes the Nth argument (1-based); a lone $ is literal
        size_t j = i + 1;
        std::string num;
        while (j < f.size() && isdigit((unsigned char)f[j])) num += f[j++];
        if (num.empty()) {
            out += '$';
            continue;
        }
        size_t n = std::stoul(num);
        if (n < 1 || n >= args.size()) return fail();
        if (!args[n].is<std::string>()) return fail();
        out += args[n].as<std::string>();
        i = j - 1;
    }
    return Value::ofString(out);
}

} // namespace

bool isBuiltin(const std::string& name) { return kNames.count(name) != 0; }

Value callBuiltin(const std::string& name, const std::vector<Value>& args,
                  const Interp& I) {
    if (name == "empty") {
        if (args.size() != 1) return fail();
        auto w = smallInt(args[0]);
        if (!w) return fail();
        return Value::ofRegSet(RegSetVal{*w, {}});
    }
    if (name == "hex" || name == "bin" || name == "dec") {
        if (args.size() != 1) return fail();
        const Value& v = args[0];
        if (v.is<Int>()) {
            const Int& i = v.as<Int>();
            if (name == "hex") return Value::ofString(hexOfInt(i));
            if (name == "bin") return Value::ofString(binOfInt(i));
            return Value::ofString(i.str());
        }
        if (v.is<BitVec>()) {
            const BitVec& b = v.as<BitVec>();
            if (name == "hex") return Value::ofString(b.toHexString());
            if (name == "bin") return Value::ofString(b.toBinaryString());
            return Value::ofString(b.toDecimalString());
        }
        return fail();
    }
    if (name == "lbl") {
        if (args.size() != 1 || !args[0].is<Pointer>()) return fail();
        const Pointer& p = args[0].as<Pointer>();
        if (p.offset != 0) return fail();
        const std::string* l = I.env.regionLabel(p.region);
        return l ? Value::ofString(*l) : fail();
    }
    if (name == "format") return doFormat(args);
    if (name == "bv_to_len") {
        if (args.size() != 2 || !args[1].is<BitVec>()) return fail();
        auto w = smallInt(args[0]);
        if (!w) return fail();
        return Value::ofBV(args[1].as<BitVec>().resize(*w));
    }
    if (name == "bv_to_uint") {
        if (args.size() != 1 || !args[0].is<BitVec>()) return fail();
        return Value::ofInt(args[0].as<BitVec>().toUnsigned());
    }
    if (name == "uint_to_bv_l") {
        if (args.size() != 2 || !args[1].is<Int>()) return fail();
        auto w = smallInt(args[0]);
        if (!w) return fail();
        return Value::ofBV(BitVec(*w, args[1].as<Int>()));
    }
    if (name == "isptr") {
        if (args.size() != 1) return fail();
        if (args[0].is<Pointer>()) return Value::ofBool(true);
        if (args[0].is<BitVec>()) return Value::ofBool(false);
        return fail();
    }
    return fail();
}

} // namespace casp
