#pragma once

#include <stdexcept>
#include <string>

namespace casp {

// Source position; line/col are 1-based, 0 means "unknown".
struct Pos {
    int line = 0;
    int col = 0;
};

// Toolchain error with a stable error code. Rendered as
// "file:line:col: code: message" by the CLI.
class Diag : public std::runtime_error {
public:
    Diag(std::string code, std::string msg, Pos pos = {})
        : std::runtime_error(msg), code_(std::move(code)), pos_(pos) {}

    const std::string& code() const { return code_; }
    Pos pos() const { return pos_; }

    std::string render(const std::string& file) const {
        std::string out = file;
        out += ":" + std::to_string(pos_.line) + ":" + std::to_string(pos_.col);
        out += ": " + code_ + ": " + what();
        return out;
    }

private:
    std::string code_;
    Pos pos_;
};

} // namespace casp
