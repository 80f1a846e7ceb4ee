#include "cutrx/sexpr.hpp"

#include <cctype>

#include "cutrx/error.hpp"

namespace cutrx {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return pos_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line_;
    char c = s_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      ++pos_;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) fail("unterminated list");
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    e.atom = true;
    std::size_t start = pos_;
    while (pos_ < s_.size()) {
      char d = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      ++pos_;
    }
    e.text = std::string(s_.substr(start, pos_ - start));
    return e;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(line_) + ": " + msg);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

std::string SExpr::str() const {
  if (atom) return text;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].str();
  }
  return out + ")";
}

SExpr read_sexpr(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.done()) r.fail("trailing input after expression");
  return e;
}

std::vector<SExpr> read_sexprs(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

}  // namespace cutrx

#include "text_util.hpp"

namespace cutrx {

int int_from_sexpr(const SExpr& e) {
  if (!e.atom || e.text.empty() || e.text.size() > 9) throw ParseError("expected integer, got " + e.str());
  for (char c : e.text)
    if (c < '0' || c > '9') throw ParseError("expected integer, got " + e.str());
  return std::stoi(e.text);
}

}  // namespace cutrx
