#include "arboreal/perm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arboreal {

Perm Perm::identity(int m) {
  std::vector<int> img(m);
  std::iota(img.begin(), img.end(), 0);
  return Perm(std::move(img));
}

Perm Perm::from_images(std::vector<int> img) {
  std::vector<bool> seen(img.size(), false);
  for (int v : img) {
    if (v < 0 || v >= static_cast<int>(img.size()) || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
  return Perm(std::move(img));
}

Perm Perm::transposition(int m, int i, int j) {
  if (i < 0 || j < 0 || i >= m || j >= m || i == j)
    throw std::invalid_argument("bad transposition");
  Perm p = identity(m);
  std::swap(p.img_[i], p.img_[j]);
  return p;
}

Perm Perm::from_lehmer(int m, uint64_t code) {
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> img(m);
  // digits of `code` in the factorial number system pick from the pool
  std::vector<uint64_t> digit(m);
  for (int i = 1; i <= m; ++i) {
    digit[m - i] = code % i;
    code /= i;
  }
  if (code != 0) throw std::invalid_argument("lehmer code out of range");
  for (int i = 0; i < m; ++i) {
    img[i] = pool[digit[i]];
    pool.erase(pool.begin() + digit[i]);
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::operator*(const Perm& o) const {
  if (degree() != o.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<int> img(degree());
  for (int i = 0; i < degree(); ++i) img[i] = img_[o.img_[i]];
  return Perm(std::move(img));
}

Perm Perm::inverse() const {
  std::vector<int> img(degree());
  for (int i = 0; i < degree(); ++i) img[img_[i]] = i;
  return Perm(std::move(img));
}

CyclePattern CyclePattern::of_perm(const Perm& p) {
  std::vector<bool> seen(p.degree(), false);
  std::vector<int> lengths;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    do {
      seen[j] = true;
      j = p(j);
      ++len;
    } while (j != i);
    lengths.push_back(len);
  }
  return from_lengths(lengths);
}

CyclePattern CyclePattern::from_lengths(const std::vector<int>& lengths) {
  std::map<int, int> tally;
  for (int l : lengths) {
    if (l < 1) throw std::invalid_argument("cycle length must be positive");
    ++tally[l];
  }
  CyclePattern r;
  r.parts_.assign(tally.begin(), tally.end());
  return r;
}

CyclePattern CyclePattern::from_parts(std::vector<std::pair<int, int>> parts) {
  std::map<int, int> tally;
  for (auto [len, mult] : parts) {
    if (len < 1 || mult < 1) throw std::invalid_argument("bad cycle pattern part");
    tally[len] += mult;
  }
  CyclePattern r;
  r.parts_.assign(tally.begin(), tally.end());
  return r;
}

CyclePattern CyclePattern::parse(const std::string& text) {
  std::vector<std::pair<int, int>> parts;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "-") continue;
    auto caret = tok.find('^');
    int len, mult = 1;
    try {
      if (caret == std::string::npos) {
        len = std::stoi(tok);
      } else {
        len = std::stoi(tok.substr(0, caret));
        mult = std::stoi(tok.substr(caret + 1));
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("bad cycle pattern token: " + tok);
    }
    parts.emplace_back(len, mult);
  }
  return from_parts(std::move(parts));
}

int CyclePattern::degree() const {
  int d = 0;
  for (auto [len, mult] : parts_) d += len * mult;
  return d;
}

int CyclePattern::fixed_points() const {
  for (auto [len, mult] : parts_)
    if (len == 1) return mult;
  return 0;
}

CyclePattern CyclePattern::merged(const CyclePattern& o) const {
  std::map<int, int> tally;
  for (auto [len, mult] : parts_) tally[len] += mult;
  for (auto [len, mult] : o.parts_) tally[len] += mult;
  CyclePattern r;
  r.parts_.assign(tally.begin(), tally.end());
  return r;
}

CyclePattern CyclePattern::scaled(int k) const {
  if (k < 1) throw std::invalid_argument("scale factor must be positive");
  CyclePattern r;
  r.parts_.reserve(parts_.size());
  for (auto [len, mult] : parts_) r.parts_.emplace_back(len * k, mult);
  return r;
}

std::string CyclePattern::to_string() const {
  if (parts_.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(parts_[i].first) + "^" + std::to_string(parts_[i].second);
  }
  return s;
}

std::vector<Perm> group_closure(const PermGroup& g, uint64_t cap) {
  for (const auto& p : g.generators)
    if (p.degree() != g.degree) throw std::invalid_argument("generator degree mismatch");
  std::set<Perm> seen;
  std::queue<Perm> work;
  Perm id = Perm::identity(g.degree);
  seen.insert(id);
  work.push(id);
  while (!work.empty()) {
    Perm cur = work.front();
    work.pop();
    for (const auto& gen : g.generators) {
      Perm nxt = gen * cur;
      if (seen.insert(nxt).second) {
        if (seen.size() > cap) throw CapExceeded("group closure exceeds cap");
        work.push(nxt);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

Integer group_order(const PermGroup& g, uint64_t cap) {
  return Integer(static_cast<unsigned long>(group_closure(g, cap).size()));
}

bool is_transitive(const PermGroup& g) {
  if (g.degree <= 0) throw std::invalid_argument("empty point set");
  std::vector<bool> seen(g.degree, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    // finite group: forward images alone close the orbit
    for (const auto& gen : g.generators) {
      int w = gen(v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == g.degree;
}

namespace {

// union-find for the minimal block system containing {0, j}
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

bool is_primitive(const PermGroup& g) {
  if (g.degree == 1) return true;  // trivial case, by convention
  if (!is_transitive(g)) return false;
  for (int j = 1; j < g.degree; ++j) {
    Dsu dsu(g.degree);
    std::vector<std::pair<int, int>> work{{0, j}};
    dsu.unite(0, j);
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      for (const auto& gen : g.generators) {
        int ga = gen(a), gb = gen(b);
        if (dsu.unite(ga, gb)) work.emplace_back(ga, gb);
      }
    }
    // size of the block containing 0
    int root = dsu.find(0), size = 0;
    for (int v = 0; v < g.degree; ++v)
      if (dsu.find(v) == root) ++size;
    if (size != g.degree) return false;
  }
  return true;
}

}  // namespace arboreal
