#include "coarsefp/groups.hpp"

#include "coarsefp/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

namespace coarsefp {

namespace {

using Code = std::uint64_t;
using Compose = std::function<Code(Code, Code)>;

// Enumerates the closure of `gens` under `compose` and tabulates the product.
// Element 0 is `identity`; elements appear in BFS order from it.
FiniteGroup close_under(Code identity, const std::vector<Code>& gens, const Compose& compose, int cap,
                        const std::string& label) {
  std::vector<Code> elems{identity};
  std::unordered_map<Code, std::int32_t> index{{identity, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (Code s : gens) {
      const Code next = compose(s, elems[head]);
      if (index.emplace(next, static_cast<std::int32_t>(elems.size())).second) {
        elems.push_back(next);
        if (static_cast<int>(elems.size()) > cap) {
          throw ResourceError("group " + label + " exceeds the order cap of " + std::to_string(cap));
        }
      }
    }
  }
  const auto n = elems.size();
  std::vector<std::int32_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(compose(elems[a], elems[b]));
  }
  std::vector<std::int32_t> gen_idx;
  for (Code s : gens) {
    const auto i = index.at(s);
    if (std::find(gen_idx.begin(), gen_idx.end(), i) == gen_idx.end()) gen_idx.push_back(i);
  }
  return FiniteGroup(static_cast<int>(n), std::move(table), std::move(gen_idx), label);
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

int parse_int(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse integer '" + text + "' in '" + context + "'");
  }
  if (used != text.size()) throw InputError("cannot parse integer '" + text + "' in '" + context + "'");
  return value;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

FiniteGroup::FiniteGroup(int order, std::vector<std::int32_t> table, std::vector<std::int32_t> gens, std::string label)
    : order_(order), mult_(std::move(table)), gens_(std::move(gens)), label_(std::move(label)) {
  if (order_ < 1) throw InputError("group order must be positive");
  const auto n = static_cast<std::size_t>(order_);
  if (mult_.size() != n * n) throw InputError("multiplication table must have order^2 entries");
  for (auto v : mult_) {
    if (v < 0 || v >= order_) throw InputError("multiplication table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool neutral = true;
    for (int x = 0; x < order_ && neutral; ++x) neutral = mult(e, x) == x && mult(x, e) == x;
    if (neutral) identity_ = e;
  }
  if (identity_ < 0) throw InputError("multiplication table has no identity element");
  inv_.assign(n, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mult(a, b) == identity_) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0) throw InputError("element without inverse in multiplication table");
  }
  if (gens_.empty()) throw InputError("generating set must be non-empty");
  std::vector<std::int32_t> unique;
  for (auto s : gens_) {
    if (s < 0 || s >= order_) throw InputError("generator index out of range");
    if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(s);
  }
  gens_ = std::move(unique);
  for (auto s : gens_) {
    if (std::find(gens_.begin(), gens_.end(), inv_[s]) == gens_.end()) {
      throw InputError("generating set is not symmetric");
    }
  }
}

bool FiniteGroup::generates() const {
  std::vector<char> seen(order_, 0);
  std::deque<int> queue{identity_};
  seen[identity_] = 1;
  int count = 1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (auto s : gens_) {
      const int y = mult(s, x);
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        queue.push_back(y);
      }
    }
  }
  return count == order_;
}

FiniteGroup make_trivial() { return FiniteGroup(1, {0}, {0}, "trivial"); }

FiniteGroup make_cyclic(int n) {
  if (n < 2) throw InputError("make_cyclic: n must be >= 2");
  if (n > kDefaultOrderCap) throw ResourceError("make_cyclic: order exceeds cap");
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::int32_t> table(un * un);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * un + b] = (a + b) % n;
  }
  return FiniteGroup(n, std::move(table), {1, n - 1}, "cyclic:" + std::to_string(n));
}

FiniteGroup make_dihedral(int n) {
  if (n < 3) throw InputError("make_dihedral: n must be >= 3");
  if (2 * n > kDefaultOrderCap) throw ResourceError("make_dihedral: order exceeds cap");
  // Element r^k s^f has index k + n f.
  const int order = 2 * n;
  const auto uo = static_cast<std::size_t>(order);
  std::vector<std::int32_t> table(uo * uo);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      const int k1 = a % n, f1 = a / n, k2 = b % n, f2 = b / n;
      const int k = ((k1 + (f1 ? -k2 : k2)) % n + n) % n;
      table[static_cast<std::size_t>(a) * uo + b] = k + n * ((f1 + f2) % 2);
    }
  }
  return FiniteGroup(order, std::move(table), {1, n - 1, n}, "dihedral:" + std::to_string(n));
}

FiniteGroup make_symmetric(int n) {
  if (n < 3) throw InputError("make_symmetric: n must be >= 3");
  if (n > 7) throw ResourceError("make_symmetric: n must be <= 7");
  // A permutation is packed as base-8 digits, digit i holding the image of i.
  auto pack = [n](const std::vector<int>& perm) {
    Code c = 0;
    for (int i = n - 1; i >= 0; --i) c = c * 8 + static_cast<Code>(perm[i]);
    return c;
  };
  auto image = [](Code c, int i) { return static_cast<int>((c >> (3 * i)) & 7U); };
  Compose compose = [n, image](Code a, Code b) {
    Code c = 0;
    for (int i = n - 1; i >= 0; --i) c = c * 8 + static_cast<Code>(image(a, image(b, i)));
    return c;
  };
  std::vector<int> id(n), swap(n), cycle(n), back(n);
  for (int i = 0; i < n; ++i) {
    id[i] = i;
    swap[i] = i;
    cycle[i] = (i + 1) % n;
    back[i] = (i + n - 1) % n;
  }
  std::swap(swap[0], swap[1]);
  return close_under(pack(id), {pack(swap), pack(cycle), pack(back)}, compose, kDefaultOrderCap,
                     "symmetric:" + std::to_string(n));
}

FiniteGroup make_sl2(int p) {
  if (!is_prime(p)) throw InputError("make_sl2: p must be prime");
  if (p < 3 || p > 17) throw InputError("make_sl2: p must satisfy 3 <= p <= 17");
  const auto up = static_cast<Code>(p);
  auto pack = [up](Code a, Code b, Code c, Code d) { return ((a * up + b) * up + c) * up + d; };
  Compose compose = [up, pack](Code x, Code y) {
    const Code x3 = x % up, x2 = (x / up) % up, x1 = (x / (up * up)) % up, x0 = x / (up * up * up);
    const Code y3 = y % up, y2 = (y / up) % up, y1 = (y / (up * up)) % up, y0 = y / (up * up * up);
    return pack((x0 * y0 + x1 * y2) % up, (x0 * y1 + x1 * y3) % up, (x2 * y0 + x3 * y2) % up,
                (x2 * y1 + x3 * y3) % up);
  };
  const Code one = 1, m1 = up - 1;
  return close_under(pack(1, 0, 0, 1),
                     {pack(1, one, 0, 1), pack(1, m1, 0, 1), pack(1, 0, one, 1), pack(1, 0, m1, 1)}, compose,
                     kDefaultOrderCap, "sl2:" + std::to_string(p));
}

FiniteGroup make_product(const FiniteGroup& g, const FiniteGroup& h, int cap) {
  const long long order = static_cast<long long>(g.order()) * h.order();
  if (order > cap) {
    throw ResourceError("make_product: order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
  }
  const int n = static_cast<int>(order);
  const int m = h.order();
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::int32_t> table(un * un);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      table[static_cast<std::size_t>(a) * un + b] = g.mult(a / m, b / m) * m + h.mult(a % m, b % m);
    }
  }
  std::vector<std::int32_t> gens;
  for (auto s : g.gens()) {
    for (auto t : h.gens()) gens.push_back(s * m + t);
  }
  return FiniteGroup(n, std::move(table), std::move(gens), "prod:" + g.label() + "," + h.label());
}

std::vector<int> word_lengths(const FiniteGroup& g) {
  std::vector<int> len(g.order(), -1);
  std::deque<int> queue{g.identity()};
  len[g.identity()] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (auto s : g.gens()) {
      const int y = g.mult(s, x);
      if (len[y] < 0) {
        len[y] = len[x] + 1;
        queue.push_back(y);
      }
    }
  }
  const auto unreached = std::count(len.begin(), len.end(), -1);
  if (unreached > 0) {
    throw InputError("word_lengths: generating set does not generate (" + std::to_string(unreached) +
                     " elements unreached)");
  }
  return len;
}

Eigen::MatrixXi cayley_adjacency(const FiniteGroup& g) {
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(g.order(), g.order());
  for (int x = 0; x < g.order(); ++x) {
    for (auto s : g.gens()) adj(x, g.mult(s, x)) += 1;
  }
  return adj;
}

void validate_group(const FiniteGroup& g, std::uint64_t seed) {
  const int n = g.order();
  auto check = [&](int a, int b, int c) {
    if (g.mult(g.mult(a, b), c) != g.mult(a, g.mult(b, c))) {
      std::ostringstream msg;
      msg << "group " << g.label() << " is not associative at (" << a << "," << b << "," << c << ")";
      throw InvariantViolation(msg.str());
    }
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) check(a, b, c);
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < 10000; ++i) check(pick(rng), pick(rng), pick(rng));
  }
  for (int x = 0; x < n; ++x) {
    if (g.mult(g.identity(), x) != x || g.mult(x, g.identity()) != x) throw InvariantViolation("identity is not neutral");
    if (g.mult(x, g.inv(x)) != g.identity() || g.mult(g.inv(x), x) != g.identity()) throw InvariantViolation("bad inverse table");
  }
  for (auto s : g.gens()) {
    if (std::find(g.gens().begin(), g.gens().end(), g.inv(s)) == g.gens().end()) {
      throw InvariantViolation("generating set is not symmetric");
    }
  }
}

FiniteGroup build_group(const std::string& raw, int cap) {
  const std::string spec = trim(raw);
  if (spec == "trivial") return make_trivial();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("group spec '" + spec + "' lacks a ':'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  FiniteGroup out = [&] {
    if (kind == "prod") {
      // Split on commas that start a new spec; "prod:cyclic:3,cyclic:5" has two factors.
      std::vector<std::string> parts;
      int depth = 0;
      std::string cur;
      for (char c : arg) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
          parts.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      parts.push_back(cur);
      if (parts.size() < 2) throw InputError("prod spec needs at least two factors: '" + spec + "'");
      auto strip = [](std::string s) {
        s = trim(s);
        if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
        return s;
      };
      FiniteGroup acc = build_group(strip(parts[0]), cap);
      for (std::size_t i = 1; i < parts.size(); ++i) acc = make_product(acc, build_group(strip(parts[i]), cap), cap);
      return acc;
    }
    const int n = parse_int(trim(arg), spec);
    if (kind == "cyclic") return make_cyclic(n);
    if (kind == "dihedral") return make_dihedral(n);
    if (kind == "symmetric") return make_symmetric(n);
    if (kind == "sl2") return make_sl2(n);
    throw InputError("unknown group kind '" + kind + "'");
  }();
  if (out.order() > cap) throw ResourceError("group " + out.label() + " exceeds the order cap");
  return out;
}

std::size_t GroupFamily::max_generators() const {
  std::size_t m = 0;
  for (const auto& g : members) m = std::max(m, g.gens().size());
  return m;
}

GroupFamily build_family(const std::string& spec, int cap) {
  GroupFamily family;
  family.label = trim(spec);
  for (const auto& item : split(spec, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const std::string kind = colon == std::string::npos ? item : item.substr(0, colon);
    const std::string rest = colon == std::string::npos ? std::string{} : item.substr(colon + 1);
    const bool listy = kind == "cyclic" || kind == "dihedral" || kind == "symmetric" || kind == "sl2";
    if (!listy) {
      family.members.push_back(build_group(item, cap));
      continue;
    }
    std::vector<int> values;
    const auto dots = rest.find("..");
    if (dots != std::string::npos) {
      const int lo = parse_int(trim(rest.substr(0, dots)), item);
      std::string hi_part = rest.substr(dots + 2);
      int step = 1;
      if (const auto c2 = hi_part.find(':'); c2 != std::string::npos) {
        step = parse_int(trim(hi_part.substr(c2 + 1)), item);
        hi_part = hi_part.substr(0, c2);
      }
      const int hi = parse_int(trim(hi_part), item);
      if (step < 1 || hi < lo) throw InputError("bad range in '" + item + "'");
      for (int v = lo; v <= hi; v += step) values.push_back(v);
    } else {
      for (const auto& tok : split(rest, ',')) values.push_back(parse_int(tok, item));
    }
    for (int v : values) family.members.push_back(build_group(kind + ":" + std::to_string(v), cap));
  }
  if (family.members.empty()) throw InputError("empty group family '" + spec + "'");
  return family;
}

}  // namespace coarsefp
