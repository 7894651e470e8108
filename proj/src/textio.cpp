#include "arboreal/textio.hpp"

#include <cctype>
#include <stdexcept>

namespace arboreal {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

int64_t parse_i64(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("empty number");
  size_t pos = 0;
  long long v = std::stoll(t, &pos);
  if (pos != t.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

uint64_t parse_u64(const std::string& s) {
  std::string t = trim(s);
  if (t.empty() || t[0] == '-') throw std::invalid_argument("bad unsigned number: " + s);
  size_t pos = 0;
  unsigned long long v = std::stoull(t, &pos);
  if (pos != t.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') {
      if (--depth < 0) throw std::invalid_argument("unbalanced ']' in: " + s);
    }
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced '[' in: " + s);
  out.push_back(cur);
  return out;
}

Field parse_field(const std::string& s) {
  std::string t = trim(s);
  if (t == "Q") return Field::rationals();
  if (t.rfind("q=", 0) != 0) throw std::invalid_argument("bad field: " + s);
  std::string body = t.substr(2);
  size_t caret = body.find('^');
  if (caret != std::string::npos) {
    int64_t p = parse_i64(body.substr(0, caret));
    int64_t k = parse_i64(body.substr(caret + 1));
    if (k < 1 || k > 62) throw std::invalid_argument("bad extension degree: " + s);
    return Field::finite(p, static_cast<int>(k));
  }
  int64_t n = parse_i64(body);
  if (n < 2) throw std::invalid_argument("bad field order: " + s);
  auto [p, k] = prime_power_decompose(static_cast<uint64_t>(n));
  return Field::finite(p, k);
}

std::string format_field(const Field& F) { return F.to_string(); }

Rational parse_rational(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("empty rational");
  Rational r;
  try {
    r = Rational(t);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational: " + s);
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) { return r.get_str(); }

FieldElem parse_elem(const Field& F, const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) throw std::invalid_argument("empty field element");
  if (F.is_rationals()) return F.from_rational(parse_rational(t));
  if (t.front() == '[') {
    if (t.back() != ']') throw std::invalid_argument("bad element: " + s);
    std::string body = t.substr(1, t.size() - 2);
    std::vector<int64_t> res;
    if (!trim(body).empty())
      for (const auto& part : split_top(body, ',')) res.push_back(parse_i64(part));
    if (static_cast<int>(res.size()) > F.extension_degree())
      throw std::invalid_argument("too many residues: " + s);
    return F.from_residues(std::move(res));
  }
  return F.from_integer(Integer(t));
}

std::string format_elem(const FieldElem& a) { return a.to_string(); }

Poly parse_poly(const Field& F, const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) return Poly(F);
  std::vector<FieldElem> cs;
  for (const auto& part : split_top(t, ',')) cs.push_back(parse_elem(F, part));
  return Poly(F, std::move(cs));
}

std::string format_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= f.degree(); ++i) {
    if (i) out += ",";
    out += f.coeff(i).to_string();
  }
  return out;
}

RationalMap parse_map(const Field& F, const std::string& s) {
  std::string t = trim(s);
  if (t.find('=') == std::string::npos)
    return RationalMap::make(parse_poly(F, t), Poly::constant(F.one()));
  bool have_num = false;
  Poly num(F), den = Poly::constant(F.one());
  for (const auto& raw : split_top(t, ';')) {
    std::string part = trim(raw);
    if (part.empty()) continue;
    size_t eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad map part: " + part);
    std::string key = trim(part.substr(0, eq));
    std::string val = part.substr(eq + 1);
    if (key == "num") {
      num = parse_poly(F, val);
      have_num = true;
    } else if (key == "den") {
      den = parse_poly(F, val);
    } else {
      throw std::invalid_argument("bad map key: " + key);
    }
  }
  if (!have_num) throw std::invalid_argument("map needs num=: " + s);
  return RationalMap::make(num, den);
}

std::string format_map(const RationalMap& m) {
  return "num=" + format_poly(m.num()) + ";den=" + format_poly(m.den());
}

}  // namespace arboreal
