#include "arboreal/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "arboreal/textio.hpp"
#include "json.hpp"

namespace arboreal {

namespace {

using nlohmann::json;

/* ---- CSV primitives ------------------------------------------------------- */

std::string cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

struct Section {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool inq = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (inq) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          inq = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      inq = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (inq) throw std::invalid_argument("report parse: unterminated quote");
  out.push_back(cur);
  return out;
}

std::vector<Section> parse_sections(const std::string& text) {
  std::vector<Section> secs;
  std::istringstream is(text);
  std::string line;
  size_t cur = SIZE_MAX;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      cur = SIZE_MAX;
      continue;
    }
    if (line[0] == '#') {
      secs.push_back(Section{line.substr(1), {}, {}});
      cur = secs.size() - 1;
      continue;
    }
    if (cur == SIZE_MAX) throw std::invalid_argument("report parse: row outside a section");
    auto cells = split_csv_line(line);
    if (secs[cur].header.empty())
      secs[cur].header = std::move(cells);
    else
      secs[cur].rows.push_back(std::move(cells));
  }
  if (secs.empty() || secs[0].name != "meta")
    throw std::invalid_argument("report parse: missing #meta section");
  return secs;
}

const Section& find_section(const std::vector<Section>& secs, const std::string& name) {
  for (const auto& s : secs)
    if (s.name == name) return s;
  throw std::invalid_argument("report parse: missing #" + name + " section");
}

const Section* find_section_opt(const std::vector<Section>& secs, const std::string& name) {
  for (const auto& s : secs)
    if (s.name == name) return &s;
  return nullptr;
}

std::string meta_get(const Section& meta, const std::string& key) {
  for (const auto& row : meta.rows)
    if (row.size() >= 2 && row[0] == key) return row[1];
  throw std::invalid_argument("report parse: missing meta key " + key);
}

void check_type(const Section& meta, const std::string& want) {
  if (meta_get(meta, "type") != want)
    throw std::invalid_argument("report parse: expected a " + want + " report");
}

const std::vector<std::string>& row_width(const std::vector<std::string>& row, size_t w) {
  if (row.size() != w) throw std::invalid_argument("report parse: wrong column count");
  return row;
}

/* ---- small value codecs --------------------------------------------------- */

std::string bool_str(bool b) { return b ? "true" : "false"; }

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("report parse: bad boolean " + s);
}

std::string int_str(const Integer& v) { return v.get_str(); }

std::string num_str(const Rational& r) { return Integer(r.get_num()).get_str(); }
std::string den_str(const Rational& r) { return Integer(r.get_den()).get_str(); }

Rational rat_from_parts(const std::string& num, const std::string& den) {
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

int parse_int(const std::string& s) { return static_cast<int>(parse_i64(s)); }

std::string dev_str(double d) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", d);
  return std::string(buf);
}

double deviation(uint64_t q, int d, const Integer& count, const Rational& rho) {
  Rational qd(pow_int(Integer(static_cast<unsigned long>(q)), d));
  Rational diff = Rational(count) - qd * rho;
  return std::fabs(diff.get_d()) * std::sqrt(static_cast<double>(q)) / qd.get_d();
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "not_applicable";
  }
}

Verdict parse_verdict(const std::string& s) {
  if (s == "holds") return Verdict::holds;
  if (s == "fails") return Verdict::fails;
  if (s == "not_applicable") return Verdict::not_applicable;
  throw std::invalid_argument("report parse: bad verdict " + s);
}

std::string join_semi(const std::vector<std::string>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) out += ";";
    out += items[i];
  }
  return out;
}

std::vector<std::string> split_semi(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

json parse_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("report parse: not a JSON object");
  return j;
}

void check_json_type(const json& j, const std::string& want) {
  if (j.at("type").get<std::string>() != want)
    throw std::invalid_argument("report parse: expected a " + want + " report");
}

}  // namespace

/* ==== pattern distribution ================================================= */

std::string to_csv(const PatternDistribution& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,dist\n";
  m << "d," << r.d << "\nn," << r.n << "\n";
  m << "group_order," << int_str(r.group_order) << "\n";
  std::ostringstream rows;
  rows << "#rows\npattern,numerator,denominator\n";
  for (const auto& [pat, rho] : r.entries)
    rows << cell(pat.to_string()) << "," << num_str(rho) << "," << den_str(rho) << "\n";
  return m.str() + "\n" + rows.str();
}

PatternDistribution dist_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "dist");
  PatternDistribution r;
  r.d = parse_int(meta_get(secs[0], "d"));
  r.n = parse_int(meta_get(secs[0], "n"));
  r.group_order = Integer(meta_get(secs[0], "group_order"));
  for (const auto& row : find_section(secs, "rows").rows) {
    row_width(row, 3);
    r.entries.emplace(CyclePattern::parse(row[0]), rat_from_parts(row[1], row[2]));
  }
  return r;
}

std::string to_json(const PatternDistribution& r) {
  json j;
  j["type"] = "dist";
  j["d"] = r.d;
  j["n"] = r.n;
  j["group_order"] = int_str(r.group_order);
  j["rows"] = json::array();
  for (const auto& [pat, rho] : r.entries)
    j["rows"].push_back({{"pattern", pat.to_string()},
                         {"numerator", num_str(rho)},
                         {"denominator", den_str(rho)}});
  return j.dump(2);
}

PatternDistribution dist_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "dist");
  PatternDistribution r;
  r.d = j.at("d").get<int>();
  r.n = j.at("n").get<int>();
  r.group_order = Integer(j.at("group_order").get<std::string>());
  for (const auto& e : j.at("rows"))
    r.entries.emplace(CyclePattern::parse(e.at("pattern").get<std::string>()),
                      rat_from_parts(e.at("numerator").get<std::string>(),
                                     e.at("denominator").get<std::string>()));
  return r;
}

/* ==== fixed-point proportion =============================================== */

std::string to_csv(const FppReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,fpp\n";
  m << "d," << r.d << "\nn," << r.n << "\n";
  m << "method," << cell(r.method) << "\n";
  std::ostringstream rows;
  rows << "#rows\nvalue_num,value_den\n";
  rows << num_str(r.value) << "," << den_str(r.value) << "\n";
  return m.str() + "\n" + rows.str();
}

FppReport fpp_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "fpp");
  FppReport r;
  r.d = parse_int(meta_get(secs[0], "d"));
  r.n = parse_int(meta_get(secs[0], "n"));
  r.method = meta_get(secs[0], "method");
  const auto& rows = find_section(secs, "rows").rows;
  if (rows.size() != 1) throw std::invalid_argument("report parse: fpp needs one row");
  row_width(rows[0], 2);
  r.value = rat_from_parts(rows[0][0], rows[0][1]);
  return r;
}

std::string to_json(const FppReport& r) {
  json j;
  j["type"] = "fpp";
  j["d"] = r.d;
  j["n"] = r.n;
  j["method"] = r.method;
  j["value_num"] = num_str(r.value);
  j["value_den"] = den_str(r.value);
  return j.dump(2);
}

FppReport fpp_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "fpp");
  FppReport r;
  r.d = j.at("d").get<int>();
  r.n = j.at("n").get<int>();
  r.method = j.at("method").get<std::string>();
  r.value = rat_from_parts(j.at("value_num").get<std::string>(),
                           j.at("value_den").get<std::string>());
  return r;
}

/* ==== sampled wreath patterns ============================================== */

std::string to_csv(const SampleReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,sample\n";
  m << "d," << r.d << "\nn," << r.n << "\n";
  m << "count," << r.count << "\nseed," << r.seed << "\n";
  std::ostringstream rows;
  rows << "#rows\npattern,count\n";
  for (const auto& [pat, c] : r.tallies)
    rows << cell(pat.to_string()) << "," << int_str(c) << "\n";
  return m.str() + "\n" + rows.str();
}

SampleReport sample_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "sample");
  SampleReport r;
  r.d = parse_int(meta_get(secs[0], "d"));
  r.n = parse_int(meta_get(secs[0], "n"));
  r.count = parse_u64(meta_get(secs[0], "count"));
  r.seed = parse_u64(meta_get(secs[0], "seed"));
  for (const auto& row : find_section(secs, "rows").rows) {
    row_width(row, 2);
    r.tallies[CyclePattern::parse(row[0])] = Integer(row[1]);
  }
  return r;
}

std::string to_json(const SampleReport& r) {
  json j;
  j["type"] = "sample";
  j["d"] = r.d;
  j["n"] = r.n;
  j["count"] = r.count;
  j["seed"] = r.seed;
  j["rows"] = json::array();
  for (const auto& [pat, c] : r.tallies)
    j["rows"].push_back({{"pattern", pat.to_string()}, {"count", int_str(c)}});
  return j.dump(2);
}

SampleReport sample_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "sample");
  SampleReport r;
  r.d = j.at("d").get<int>();
  r.n = j.at("n").get<int>();
  r.count = j.at("count").get<uint64_t>();
  r.seed = j.at("seed").get<uint64_t>();
  for (const auto& e : j.at("rows"))
    r.tallies[CyclePattern::parse(e.at("pattern").get<std::string>())] =
        Integer(e.at("count").get<std::string>());
  return r;
}

/* ==== genericity report ==================================================== */

std::string to_csv(const HReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,hcheck\n";
  m << "overall," << bool_str(r.overall) << "\n";
  std::ostringstream rows;
  rows << "#conditions\ncondition,verdict,witness\n";
  for (size_t i = 0; i < r.conditions.size(); ++i)
    rows << (i + 1) << "," << verdict_str(r.conditions[i].verdict) << ","
         << cell(r.conditions[i].witness) << "\n";
  return m.str() + "\n" + rows.str();
}

HReport h_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "hcheck");
  HReport r;
  r.overall = parse_bool(meta_get(secs[0], "overall"));
  const auto& rows = find_section(secs, "conditions").rows;
  if (rows.size() != r.conditions.size())
    throw std::invalid_argument("report parse: hcheck needs four conditions");
  for (const auto& row : rows) {
    row_width(row, 3);
    size_t i = static_cast<size_t>(parse_i64(row[0]));
    if (i < 1 || i > r.conditions.size())
      throw std::invalid_argument("report parse: bad condition index");
    r.conditions[i - 1] = ConditionReport{parse_verdict(row[1]), row[2]};
  }
  return r;
}

std::string to_json(const HReport& r) {
  json j;
  j["type"] = "hcheck";
  j["overall"] = r.overall;
  j["conditions"] = json::array();
  for (size_t i = 0; i < r.conditions.size(); ++i)
    j["conditions"].push_back({{"condition", i + 1},
                               {"verdict", verdict_str(r.conditions[i].verdict)},
                               {"witness", r.conditions[i].witness}});
  return j.dump(2);
}

HReport h_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "hcheck");
  HReport r;
  r.overall = j.at("overall").get<bool>();
  const auto& cs = j.at("conditions");
  if (cs.size() != r.conditions.size())
    throw std::invalid_argument("report parse: hcheck needs four conditions");
  for (const auto& e : cs) {
    size_t i = e.at("condition").get<size_t>();
    if (i < 1 || i > r.conditions.size())
      throw std::invalid_argument("report parse: bad condition index");
    r.conditions[i - 1] = ConditionReport{parse_verdict(e.at("verdict").get<std::string>()),
                                          e.at("witness").get<std::string>()};
  }
  return r;
}

/* ==== parametric discriminant ============================================== */

std::string to_csv(const DiscReport& r) {
  const Field& F = r.disc.field();
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,disc\n";
  m << "field," << cell(format_field(F)) << "\n";
  m << "disc," << cell(format_poly(r.disc)) << "\n";
  m << "scale," << cell(format_elem(r.scale)) << "\n";
  m << "constant_ratio," << bool_str(r.constant_ratio) << "\n";
  std::ostringstream rows;
  rows << "#critical_product\nfactor,exponent\n";
  for (const auto& [v, e] : r.critical_product)
    rows << cell(format_poly(v)) << "," << e << "\n";
  return m.str() + "\n" + rows.str();
}

DiscReport disc_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "disc");
  Field F = parse_field(meta_get(secs[0], "field"));
  DiscReport r{parse_poly(F, meta_get(secs[0], "disc")),
               parse_elem(F, meta_get(secs[0], "scale")),
               {},
               parse_bool(meta_get(secs[0], "constant_ratio"))};
  for (const auto& row : find_section(secs, "critical_product").rows) {
    row_width(row, 2);
    r.critical_product.emplace_back(parse_poly(F, row[0]), parse_int(row[1]));
  }
  return r;
}

std::string to_json(const DiscReport& r) {
  json j;
  j["type"] = "disc";
  j["field"] = format_field(r.disc.field());
  j["disc"] = format_poly(r.disc);
  j["scale"] = format_elem(r.scale);
  j["constant_ratio"] = r.constant_ratio;
  j["critical_product"] = json::array();
  for (const auto& [v, e] : r.critical_product)
    j["critical_product"].push_back({{"factor", format_poly(v)}, {"exponent", e}});
  return j.dump(2);
}

DiscReport disc_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "disc");
  Field F = parse_field(j.at("field").get<std::string>());
  DiscReport r{parse_poly(F, j.at("disc").get<std::string>()),
               parse_elem(F, j.at("scale").get<std::string>()),
               {},
               j.at("constant_ratio").get<bool>()};
  for (const auto& e : j.at("critical_product"))
    r.critical_product.emplace_back(parse_poly(F, e.at("factor").get<std::string>()),
                                    e.at("exponent").get<int>());
  return r;
}

/* ==== iterated discriminant radical ======================================== */

std::string to_csv(const IterDiscReport& r) {
  const Field& F = r.radical_disc.field();
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,iterdisc\n";
  m << "field," << cell(format_field(F)) << "\n";
  m << "radical_disc," << cell(format_poly(r.radical_disc)) << "\n";
  m << "rn_product_radical," << cell(format_poly(r.rn_product_radical)) << "\n";
  m << "has_critical_points," << bool_str(r.has_critical_points) << "\n";
  m << "agrees," << bool_str(r.agrees) << "\n";
  return m.str();
}

IterDiscReport iterdisc_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "iterdisc");
  Field F = parse_field(meta_get(secs[0], "field"));
  return IterDiscReport{parse_poly(F, meta_get(secs[0], "radical_disc")),
                        parse_poly(F, meta_get(secs[0], "rn_product_radical")),
                        parse_bool(meta_get(secs[0], "has_critical_points")),
                        parse_bool(meta_get(secs[0], "agrees"))};
}

std::string to_json(const IterDiscReport& r) {
  json j;
  j["type"] = "iterdisc";
  j["field"] = format_field(r.radical_disc.field());
  j["radical_disc"] = format_poly(r.radical_disc);
  j["rn_product_radical"] = format_poly(r.rn_product_radical);
  j["has_critical_points"] = r.has_critical_points;
  j["agrees"] = r.agrees;
  return j.dump(2);
}

IterDiscReport iterdisc_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "iterdisc");
  Field F = parse_field(j.at("field").get<std::string>());
  return IterDiscReport{parse_poly(F, j.at("radical_disc").get<std::string>()),
                        parse_poly(F, j.at("rn_product_radical").get<std::string>()),
                        j.at("has_critical_points").get<bool>(),
                        j.at("agrees").get<bool>()};
}

/* ==== census over leading-coefficient slices =============================== */

std::string to_csv(const ScanReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,scan\n";
  m << "q," << r.q << "\n";
  m << "b," << cell(r.b) << "\n";
  m << "d," << r.d << "\nn," << r.n << "\n";
  m << "seed," << r.seed << "\n";
  m << "non_squarefree," << int_str(r.non_squarefree) << "\n";
  m << "h_members," << int_str(r.h_members) << "\n";
  m << "m_bound," << cell(format_rational(r.m_bound)) << "\n";
  std::vector<std::string> viols;
  for (const auto& v : r.violations) viols.push_back(v.to_string());
  m << "violations," << cell(join_semi(viols)) << "\n";
  std::ostringstream rows;
  rows << "#rows\nq,b,d,n,pattern,count,rho_num,rho_den,deviation\n";
  for (const auto& row : r.rows)
    rows << r.q << "," << cell(r.b) << "," << r.d << "," << r.n << ","
         << cell(row.pattern.to_string()) << "," << int_str(row.count) << ","
         << num_str(row.rho) << "," << den_str(row.rho) << ","
         << dev_str(deviation(r.q, r.d, row.count, row.rho)) << "\n";
  return m.str() + "\n" + rows.str();
}

ScanReport scan_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "scan");
  ScanReport r;
  r.q = parse_u64(meta_get(secs[0], "q"));
  r.b = meta_get(secs[0], "b");
  r.d = parse_int(meta_get(secs[0], "d"));
  r.n = parse_int(meta_get(secs[0], "n"));
  r.seed = parse_u64(meta_get(secs[0], "seed"));
  r.non_squarefree = Integer(meta_get(secs[0], "non_squarefree"));
  r.h_members = Integer(meta_get(secs[0], "h_members"));
  r.m_bound = parse_rational(meta_get(secs[0], "m_bound"));
  for (const auto& v : split_semi(meta_get(secs[0], "violations")))
    r.violations.push_back(CyclePattern::parse(v));
  for (const auto& row : find_section(secs, "rows").rows) {
    row_width(row, 9);
    r.rows.push_back(ScanRow{CyclePattern::parse(row[4]), Integer(row[5]),
                             rat_from_parts(row[6], row[7])});
  }
  return r;
}

std::string to_json(const ScanReport& r) {
  json j;
  j["type"] = "scan";
  j["q"] = r.q;
  j["b"] = r.b;
  j["d"] = r.d;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["non_squarefree"] = int_str(r.non_squarefree);
  j["h_members"] = int_str(r.h_members);
  j["m_bound"] = format_rational(r.m_bound);
  j["violations"] = json::array();
  for (const auto& v : r.violations) j["violations"].push_back(v.to_string());
  j["rows"] = json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"q", r.q},
                         {"b", r.b},
                         {"d", r.d},
                         {"n", r.n},
                         {"pattern", row.pattern.to_string()},
                         {"count", int_str(row.count)},
                         {"rho_num", num_str(row.rho)},
                         {"rho_den", den_str(row.rho)},
                         {"deviation", deviation(r.q, r.d, row.count, row.rho)}});
  return j.dump(2);
}

ScanReport scan_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "scan");
  ScanReport r;
  r.q = j.at("q").get<uint64_t>();
  r.b = j.at("b").get<std::string>();
  r.d = j.at("d").get<int>();
  r.n = j.at("n").get<int>();
  r.seed = j.at("seed").get<uint64_t>();
  r.non_squarefree = Integer(j.at("non_squarefree").get<std::string>());
  r.h_members = Integer(j.at("h_members").get<std::string>());
  r.m_bound = parse_rational(j.at("m_bound").get<std::string>());
  for (const auto& v : j.at("violations"))
    r.violations.push_back(CyclePattern::parse(v.get<std::string>()));
  for (const auto& e : j.at("rows"))
    r.rows.push_back(ScanRow{CyclePattern::parse(e.at("pattern").get<std::string>()),
                             Integer(e.at("count").get<std::string>()),
                             rat_from_parts(e.at("rho_num").get<std::string>(),
                                            e.at("rho_den").get<std::string>())});
  return r;
}

/* ==== fiber census ========================================================== */

std::string to_csv(const FrobReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,frob\n";
  m << "field," << cell(r.field) << "\n";
  m << "f," << cell(r.f) << "\n";
  m << "n," << r.n << "\n";
  m << "exhaustive," << bool_str(r.exhaustive) << "\n";
  m << "examined," << r.examined << "\n";
  m << "seed," << r.seed << "\n";
  m << "skipped," << int_str(r.skipped) << "\n";
  std::ostringstream rows;
  rows << "#rows\nalpha_count,pattern,count,skipped\n";
  for (const auto& [pat, c] : r.tallies)
    rows << r.examined << "," << cell(pat.to_string()) << "," << int_str(c) << ","
         << int_str(r.skipped) << "\n";
  return m.str() + "\n" + rows.str();
}

FrobReport frob_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "frob");
  FrobReport r;
  r.field = meta_get(secs[0], "field");
  r.f = meta_get(secs[0], "f");
  r.n = parse_int(meta_get(secs[0], "n"));
  r.exhaustive = parse_bool(meta_get(secs[0], "exhaustive"));
  r.examined = parse_u64(meta_get(secs[0], "examined"));
  r.seed = parse_u64(meta_get(secs[0], "seed"));
  r.skipped = Integer(meta_get(secs[0], "skipped"));
  for (const auto& row : find_section(secs, "rows").rows) {
    row_width(row, 4);
    r.tallies[CyclePattern::parse(row[1])] = Integer(row[2]);
  }
  return r;
}

std::string to_json(const FrobReport& r) {
  json j;
  j["type"] = "frob";
  j["field"] = r.field;
  j["f"] = r.f;
  j["n"] = r.n;
  j["exhaustive"] = r.exhaustive;
  j["examined"] = r.examined;
  j["seed"] = r.seed;
  j["skipped"] = int_str(r.skipped);
  j["rows"] = json::array();
  for (const auto& [pat, c] : r.tallies)
    j["rows"].push_back({{"alpha_count", r.examined},
                         {"pattern", pat.to_string()},
                         {"count", int_str(c)},
                         {"skipped", int_str(r.skipped)}});
  return j.dump(2);
}

FrobReport frob_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "frob");
  FrobReport r;
  r.field = j.at("field").get<std::string>();
  r.f = j.at("f").get<std::string>();
  r.n = j.at("n").get<int>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  r.examined = j.at("examined").get<uint64_t>();
  r.seed = j.at("seed").get<uint64_t>();
  r.skipped = Integer(j.at("skipped").get<std::string>());
  for (const auto& e : j.at("rows"))
    r.tallies[CyclePattern::parse(e.at("pattern").get<std::string>())] =
        Integer(e.at("count").get<std::string>());
  return r;
}

/* ==== orbit primes ========================================================== */

std::string to_csv(const OrbitDensityReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,orbit\n";
  m << "f," << cell(r.f) << "\n";
  m << "a0," << cell(r.a0) << "\n";
  std::ostringstream rows;
  rows << "#rows\nX,good_primes,dividing,density_num,density_den,bad_primes\n";
  std::vector<std::string> bad;
  for (int64_t p : r.bad_primes) bad.push_back(std::to_string(p));
  rows << r.X << "," << int_str(r.good_primes) << "," << int_str(r.dividing) << ","
       << num_str(r.density) << "," << den_str(r.density) << "," << cell(join_semi(bad))
       << "\n";
  std::ostringstream ladder;
  ladder << "#fpp_ladder\ndepth,fpp_num,fpp_den\n";
  for (size_t i = 0; i < r.fpp_ladder.size(); ++i)
    ladder << (i + 1) << "," << num_str(r.fpp_ladder[i]) << "," << den_str(r.fpp_ladder[i])
           << "\n";
  return m.str() + "\n" + rows.str() + "\n" + ladder.str();
}

OrbitDensityReport orbit_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "orbit");
  OrbitDensityReport r;
  r.f = meta_get(secs[0], "f");
  r.a0 = meta_get(secs[0], "a0");
  const auto& rows = find_section(secs, "rows").rows;
  if (rows.size() != 1) throw std::invalid_argument("report parse: orbit needs one row");
  row_width(rows[0], 6);
  r.X = parse_i64(rows[0][0]);
  r.good_primes = Integer(rows[0][1]);
  r.dividing = Integer(rows[0][2]);
  r.density = rat_from_parts(rows[0][3], rows[0][4]);
  for (const auto& p : split_semi(rows[0][5])) r.bad_primes.push_back(parse_i64(p));
  if (const Section* lad = find_section_opt(secs, "fpp_ladder")) {
    for (const auto& row : lad->rows) {
      row_width(row, 3);
      r.fpp_ladder.push_back(rat_from_parts(row[1], row[2]));
    }
  }
  return r;
}

std::string to_json(const OrbitDensityReport& r) {
  json j;
  j["type"] = "orbit";
  j["f"] = r.f;
  j["a0"] = r.a0;
  std::vector<std::string> bad;
  for (int64_t p : r.bad_primes) bad.push_back(std::to_string(p));
  j["rows"] = json::array();
  j["rows"].push_back({{"X", r.X},
                       {"good_primes", int_str(r.good_primes)},
                       {"dividing", int_str(r.dividing)},
                       {"density_num", num_str(r.density)},
                       {"density_den", den_str(r.density)},
                       {"bad_primes", join_semi(bad)}});
  j["fpp_ladder"] = json::array();
  for (size_t i = 0; i < r.fpp_ladder.size(); ++i)
    j["fpp_ladder"].push_back({{"depth", i + 1},
                               {"fpp_num", num_str(r.fpp_ladder[i])},
                               {"fpp_den", den_str(r.fpp_ladder[i])}});
  return j.dump(2);
}

OrbitDensityReport orbit_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "orbit");
  OrbitDensityReport r;
  r.f = j.at("f").get<std::string>();
  r.a0 = j.at("a0").get<std::string>();
  const auto& rows = j.at("rows");
  if (rows.size() != 1) throw std::invalid_argument("report parse: orbit needs one row");
  const auto& e = rows[0];
  r.X = e.at("X").get<int64_t>();
  r.good_primes = Integer(e.at("good_primes").get<std::string>());
  r.dividing = Integer(e.at("dividing").get<std::string>());
  r.density = rat_from_parts(e.at("density_num").get<std::string>(),
                             e.at("density_den").get<std::string>());
  for (const auto& p : split_semi(e.at("bad_primes").get<std::string>()))
    r.bad_primes.push_back(parse_i64(p));
  for (const auto& l : j.at("fpp_ladder"))
    r.fpp_ladder.push_back(rat_from_parts(l.at("fpp_num").get<std::string>(),
                                          l.at("fpp_den").get<std::string>()));
  return r;
}

/* ==== characteristic-2 affine family ======================================= */

std::string to_csv(const Char2FppReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,char2\n";
  m << "n_max," << r.n_max << "\n";
  std::ostringstream rows;
  rows << "#rows\nn,fpp_num,fpp_den\n";
  for (size_t i = 0; i < r.fpp.size(); ++i)
    rows << (i + 1) << "," << num_str(r.fpp[i]) << "," << den_str(r.fpp[i]) << "\n";
  return m.str() + "\n" + rows.str();
}

Char2FppReport char2_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "char2");
  Char2FppReport r;
  r.n_max = parse_int(meta_get(secs[0], "n_max"));
  for (const auto& row : find_section(secs, "rows").rows) {
    row_width(row, 3);
    r.fpp.push_back(rat_from_parts(row[1], row[2]));
  }
  return r;
}

std::string to_json(const Char2FppReport& r) {
  json j;
  j["type"] = "char2";
  j["n_max"] = r.n_max;
  j["rows"] = json::array();
  for (size_t i = 0; i < r.fpp.size(); ++i)
    j["rows"].push_back(
        {{"n", i + 1}, {"fpp_num", num_str(r.fpp[i])}, {"fpp_den", den_str(r.fpp[i])}});
  return j.dump(2);
}

Char2FppReport char2_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "char2");
  Char2FppReport r;
  r.n_max = j.at("n_max").get<int>();
  for (const auto& e : j.at("rows"))
    r.fpp.push_back(rat_from_parts(e.at("fpp_num").get<std::string>(),
                                   e.at("fpp_den").get<std::string>()));
  return r;
}

/* ==== characteristic-2 quadratic audit ===================================== */

std::string to_csv(const Char2QuadReport& r) {
  std::ostringstream m;
  m << "#meta\nkey,value\n";
  m << "type,char2quad\n";
  m << "k," << r.k << "\nn," << r.n << "\n";
  m << "maps_scanned," << r.maps_scanned << "\n";
  m << "skipped," << int_str(r.skipped) << "\n";
  m << "violations," << int_str(r.violations) << "\n";
  std::ostringstream rows;
  rows << "#profiles\nprofile,count\n";
  for (const auto& [pat, c] : r.profiles)
    rows << cell(pat.to_string()) << "," << int_str(c) << "\n";
  return m.str() + "\n" + rows.str();
}

Char2QuadReport char2quad_from_csv(const std::string& text) {
  auto secs = parse_sections(text);
  check_type(secs[0], "char2quad");
  Char2QuadReport r;
  r.k = parse_int(meta_get(secs[0], "k"));
  r.n = parse_int(meta_get(secs[0], "n"));
  r.maps_scanned = parse_u64(meta_get(secs[0], "maps_scanned"));
  r.skipped = Integer(meta_get(secs[0], "skipped"));
  r.violations = Integer(meta_get(secs[0], "violations"));
  for (const auto& row : find_section(secs, "profiles").rows) {
    row_width(row, 2);
    r.profiles[CyclePattern::parse(row[0])] = Integer(row[1]);
  }
  return r;
}

std::string to_json(const Char2QuadReport& r) {
  json j;
  j["type"] = "char2quad";
  j["k"] = r.k;
  j["n"] = r.n;
  j["maps_scanned"] = r.maps_scanned;
  j["skipped"] = int_str(r.skipped);
  j["violations"] = int_str(r.violations);
  j["profiles"] = json::array();
  for (const auto& [pat, c] : r.profiles)
    j["profiles"].push_back({{"profile", pat.to_string()}, {"count", int_str(c)}});
  return j.dump(2);
}

Char2QuadReport char2quad_from_json(const std::string& text) {
  json j = parse_json(text);
  check_json_type(j, "char2quad");
  Char2QuadReport r;
  r.k = j.at("k").get<int>();
  r.n = j.at("n").get<int>();
  r.maps_scanned = j.at("maps_scanned").get<uint64_t>();
  r.skipped = Integer(j.at("skipped").get<std::string>());
  r.violations = Integer(j.at("violations").get<std::string>());
  for (const auto& e : j.at("profiles"))
    r.profiles[CyclePattern::parse(e.at("profile").get<std::string>())] =
        Integer(e.at("count").get<std::string>());
  return r;
}

/* ==== type peeking ========================================================== */

std::string report_type_csv(const std::string& text) {
  auto secs = parse_sections(text);
  return meta_get(secs[0], "type");
}

std::string report_type_json(const std::string& text) {
  return parse_json(text).at("type").get<std::string>();
}

}  // namespace arboreal
