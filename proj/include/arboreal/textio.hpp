#pragma once

#include <string>
#include <vector>

#include "arboreal/dynamics.hpp"
#include "arboreal/field.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/rational.hpp"

namespace arboreal {

/* Plain-text encodings shared by the command line and the report files.
 *   field:    "Q", "q=7", "q=3^2" (also accepts "q=9")
 *   rational: "a" or "a/b"
 *   element:  rational over Q, decimal residue over GF(p),
 *             "[c0,c1,...]" power-basis residues over GF(p^k)
 *   poly:     comma-separated coefficients, constant term first
 *   map:      "num=<poly>;den=<poly>" (den optional), or a bare poly
 */

Field parse_field(const std::string& s);
std::string format_field(const Field& F);

Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& r);

FieldElem parse_elem(const Field& F, const std::string& s);
std::string format_elem(const FieldElem& a);

Poly parse_poly(const Field& F, const std::string& s);
std::string format_poly(const Poly& f);

RationalMap parse_map(const Field& F, const std::string& s);
std::string format_map(const RationalMap& m);

// split on sep at bracket depth zero; never splits inside [...]
std::vector<std::string> split_top(const std::string& s, char sep);

std::string trim(const std::string& s);
int64_t parse_i64(const std::string& s);
uint64_t parse_u64(const std::string& s);

}  // namespace arboreal
