#include <cctype>
#include <numeric>

#include "fanoqh/errors.hpp"
#include "fanoqh/polytope.hpp"

namespace fanoqh {

namespace {

class FamilyParser {
 public:
  explicit FamilyParser(std::string_view text) : text_(text) {}

  FamilyExpr parse() {
    FamilyExpr expr;
    skip_space();
    expr.atoms.push_back(atom());
    skip_space();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      skip_space();
      expr.atoms.push_back(atom());
      skip_space();
    }
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return expr;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view word) {
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  int parameter() {
    expect('(');
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (++digits > 6) throw ParseError("family parameter too large", start);
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (digits == 0) throw ParseError("expected integer", pos_);
    if (negative) value = -value;
    if (value <= 0) throw ParseError("family parameter must be >= 1", start);
    expect(')');
    return static_cast<int>(value);
  }

  FamilyAtom atom() {
    const std::size_t start = pos_;
    // "pdp" before "dp" so the longer keyword wins.
    if (consume("pdp")) return {AtomKind::PseudoDelPezzo, parameter()};
    if (consume("dp")) return {AtomKind::DelPezzo, parameter()};
    if (consume("seg")) return {AtomKind::Segment, 1};
    throw ParseError("expected 'seg', 'dp(k)' or 'pdp(k)'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

int FamilyExpr::dim() const {
  return std::accumulate(atoms.begin(), atoms.end(), 0,
                         [](int acc, const FamilyAtom& a) { return acc + a.dim(); });
}

FamilyExpr parse_family(std::string_view text) { return FamilyParser(text).parse(); }

std::string to_string(const FamilyAtom& atom) {
  switch (atom.kind) {
    case AtomKind::Segment:
      return "seg";
    case AtomKind::DelPezzo:
      return "dp(" + std::to_string(atom.k) + ")";
    case AtomKind::PseudoDelPezzo:
      return "pdp(" + std::to_string(atom.k) + ")";
  }
  return {};
}

std::string to_string(const FamilyExpr& expr) {
  std::string out;
  for (std::size_t i = 0; i < expr.atoms.size(); ++i) {
    if (i) out += '*';
    out += to_string(expr.atoms[i]);
  }
  return out;
}

LatticePolytope realize(const FamilyAtom& atom) {
  switch (atom.kind) {
    case AtomKind::Segment:
      return make_segment();
    case AtomKind::DelPezzo:
      return make_del_pezzo(atom.k);
    case AtomKind::PseudoDelPezzo:
      return make_pseudo_del_pezzo(atom.k);
  }
  throw std::logic_error("unknown atom kind");
}

LatticePolytope realize(const FamilyExpr& expr) {
  if (expr.atoms.empty()) throw std::invalid_argument("empty family expression");
  LatticePolytope p = realize(expr.atoms.front());
  for (std::size_t i = 1; i < expr.atoms.size(); ++i) {
    p = convex_hull_product(p, realize(expr.atoms[i]));
  }
  return p;
}

}  // namespace fanoqh
