#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rgc/ainfinity.hpp"
#include "rgc/cyclic.hpp"
#include "rgc/ribbon.hpp"
#include "rgc/tcft.hpp"

namespace rgc {

namespace detail {

inline std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<int> parse_int_list(const std::string& body, const std::string& what) {
  std::vector<int> out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      if (strip(cur).empty()) throw std::invalid_argument(what + ": empty entry");
      out.push_back(std::stoi(strip(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty()) out.push_back(std::stoi(strip(cur)));
  return out;
}

inline std::vector<std::pair<int, int>> parse_pair_list(const std::string& body,
                                                        const std::string& what) {
  std::vector<std::pair<int, int>> out;
  std::size_t p = 0;
  while (p < body.size()) {
    while (p < body.size() && (body[p] == ',' || std::isspace(static_cast<unsigned char>(body[p])))) ++p;
    if (p >= body.size()) break;
    if (body[p] != '(') throw std::invalid_argument(what + ": expected '('");
    std::size_t close = body.find(')', p);
    if (close == std::string::npos) throw std::invalid_argument(what + ": missing ')'");
    std::string inner = body.substr(p + 1, close - p - 1);
    std::vector<int> pr = parse_int_list(inner, what);
    if (pr.size() != 2) throw std::invalid_argument(what + ": pair needs two entries");
    out.emplace_back(pr[0], pr[1]);
    p = close + 1;
  }
  return out;
}

// fields of the form key=[...] separated by ';'
inline std::map<std::string, std::string> parse_fields(const std::string& line) {
  std::map<std::string, std::string> out;
  std::size_t p = 0;
  while (p < line.size()) {
    std::size_t semi = line.find(';', p);
    std::string part = strip(line.substr(p, semi == std::string::npos ? std::string::npos : semi - p));
    p = (semi == std::string::npos) ? line.size() : semi + 1;
    if (part.empty()) continue;
    std::size_t eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("graph literal: expected key=[...]");
    std::string key = strip(part.substr(0, eq));
    std::string val = strip(part.substr(eq + 1));
    if (val.size() < 2 || val.front() != '[' || val.back() != ']')
      throw std::invalid_argument("graph literal: value of " + key + " must be [...]");
    out[key] = val.substr(1, val.size() - 2);
  }
  return out;
}

}  // namespace detail

// `valences=[3,3]; chords=[(1,4),(2,5),(3,6)]`
inline FullyOrderedGraph parse_graph_literal(const std::string& line) {
  auto fields = detail::parse_fields(line);
  if (!fields.count("valences") || !fields.count("chords"))
    throw std::invalid_argument("graph literal: needs valences=[...] and chords=[...]");
  FullyOrderedGraph g;
  g.valences = detail::parse_int_list(fields["valences"], "valences");
  g.chords = detail::parse_pair_list(fields["chords"], "chords");
  validate_graph(g);
  return g;
}

// `valences=[3]; chords=[(1,2),(3,4)]; in=[...]; out=[...]`: ids above the
// internal block are external; the in/out lists assign the labels in order.
inline LeggedGraph parse_legged_literal(const std::string& line) {
  auto fields = detail::parse_fields(line);
  if (!fields.count("valences") || !fields.count("chords"))
    throw std::invalid_argument("legged literal: needs valences=[...] and chords=[...]");
  std::vector<int> valences = detail::parse_int_list(fields["valences"], "valences");
  auto chords = detail::parse_pair_list(fields["chords"], "chords");
  std::vector<int> ins = fields.count("in") ? detail::parse_int_list(fields["in"], "in") : std::vector<int>{};
  std::vector<int> outs = fields.count("out") ? detail::parse_int_list(fields["out"], "out") : std::vector<int>{};

  LeggedGraph g;
  g.valences = valences;
  g.in_count = static_cast<int>(ins.size());
  g.out_count = static_cast<int>(outs.size());
  int S = g.internal_half_edges();
  std::map<int, int> remap;  // literal external id -> layout id
  for (std::size_t l = 0; l < ins.size(); ++l) {
    if (ins[l] <= S) throw std::invalid_argument("legged literal: in-leg id inside internal block");
    remap[ins[l]] = g.in_leg(static_cast<int>(l) + 1);
  }
  for (std::size_t l = 0; l < outs.size(); ++l) {
    if (outs[l] <= S) throw std::invalid_argument("legged literal: out-leg id inside internal block");
    if (remap.count(outs[l])) throw std::invalid_argument("legged literal: duplicate leg id");
    remap[outs[l]] = g.out_leg(static_cast<int>(l) + 1);
  }
  auto map_id = [&](int h) {
    if (h <= S) return h;
    auto it = remap.find(h);
    if (it == remap.end()) throw std::invalid_argument("legged literal: unlabelled external id");
    return it->second;
  };
  for (auto [a, b] : chords) {
    int ma = map_id(a), mb = map_id(b);
    if (ma <= S && mb <= S) g.internal_edges.emplace_back(ma, mb);
    else g.leg_edges.emplace_back(ma, mb);
  }
  validate_legged(g);
  return g;
}

inline std::string legged_literal(const LeggedGraph& g) {
  std::ostringstream os;
  os << "valences=[";
  for (std::size_t i = 0; i < g.valences.size(); ++i) os << (i ? "," : "") << g.valences[i];
  os << "]; chords=[";
  bool first = true;
  for (auto [a, b] : g.internal_edges) {
    os << (first ? "" : ",") << "(" << a << "," << b << ")";
    first = false;
  }
  for (auto [a, b] : g.leg_edges) {
    os << (first ? "" : ",") << "(" << a << "," << b << ")";
    first = false;
  }
  os << "]; in=[";
  for (int l = 1; l <= g.in_count; ++l) os << (l > 1 ? "," : "") << g.in_leg(l);
  os << "]; out=[";
  for (int l = 1; l <= g.out_count; ++l) os << (l > 1 ? "," : "") << g.out_leg(l);
  os << "]";
  return os.str();
}

// ---- cyclic word and chain literals -------------------------------------------

// `p1 q1 x1`: space-separated letters of a tagged space.
inline Letters parse_word_literal(const SuperSpace& s, const std::string& text) {
  Letters out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto idx = s.index_of(tok);
    if (!idx) throw std::invalid_argument("word literal: unknown letter " + tok);
    out.push_back(*idx);
  }
  return out;
}

inline std::string word_literal(const SuperSpace& s, const Letters& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += s.label(w[i]);
  }
  return out;
}

// `coef * [w1 ^ w2 ^ ...]` per line; empty monomial is `[]`.
inline CEChain parse_chain_literal(const SuperSpace& s, const std::string& text) {
  CEChain out(s);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = detail::strip(line);
    if (line.empty() || line[0] == '#') continue;
    std::size_t star = line.find('*');
    if (star == std::string::npos) throw std::invalid_argument("chain literal: missing '*'");
    Rational coef = Rational::parse_or_throw(detail::strip(line.substr(0, star)));
    std::string rest = detail::strip(line.substr(star + 1));
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      throw std::invalid_argument("chain literal: monomial must be [w1 ^ w2 ^ ...]");
    std::string body = rest.substr(1, rest.size() - 2);
    Monomial m;
    std::size_t p = 0;
    while (p <= body.size()) {
      std::size_t caret = body.find('^', p);
      std::string wtxt = detail::strip(
          body.substr(p, caret == std::string::npos ? std::string::npos : caret - p));
      if (!wtxt.empty()) m.push_back(parse_word_literal(s, wtxt));
      if (caret == std::string::npos) break;
      p = caret + 1;
    }
    out.add(m, coef);
  }
  return out;
}

inline std::string chain_literal(const SuperSpace& s, const CEChain& x) {
  std::ostringstream os;
  for (const auto& [m, c] : x.terms()) {
    os << c.str() << " * [";
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) os << " ^ ";
      os << word_literal(s, m[i]);
    }
    os << "]\n";
  }
  return os.str();
}

// ---- algebra description files -------------------------------------------------

// Structured text:
//   mode: frobenius            (default; or `direct`)
//   basis: e t
//   parity: e=even t=even
//   pairing: e t = 1           (trace pairing on U / pairing on PiU in direct mode)
//   frobenius: e e = e         (structure constants; right side a linear combo)
//   h3: a a b = 1/2            (direct mode: coefficient entries of h_k)
inline AInfinityAlgebra parse_algebra_file(std::istream& in, const std::string& name) {
  std::string mode = "frobenius";
  std::vector<std::string> labels;
  std::map<std::string, Parity> parities;
  std::vector<std::tuple<std::string, std::string, Rational>> pairing_entries;
  std::vector<std::tuple<std::string, std::string, std::string>> mult_entries;  // a b rhs
  std::map<int, std::vector<std::pair<std::vector<std::string>, Rational>>> h_entries;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip(line);
    if (line.empty() || line[0] == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("algebra file line " + std::to_string(lineno) + ": missing ':'");
    std::string key = detail::strip(line.substr(0, colon));
    std::string val = detail::strip(line.substr(colon + 1));
    if (key == "mode") {
      if (val != "frobenius" && val != "direct")
        throw std::invalid_argument("algebra file: unknown mode " + val);
      mode = val;
    } else if (key == "basis") {
      std::istringstream is(val);
      std::string tok;
      while (is >> tok) labels.push_back(tok);
    } else if (key == "parity") {
      std::istringstream is(val);
      std::string tok;
      while (is >> tok) {
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("algebra file: parity entries are label=even|odd");
        std::string l = tok.substr(0, eq), p = tok.substr(eq + 1);
        if (p != "even" && p != "odd") throw std::invalid_argument("algebra file: bad parity " + p);
        parities[l] = (p == "odd") ? Parity::Odd : Parity::Even;
      }
    } else if (key == "pairing") {
      std::size_t eq = val.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("algebra file: pairing needs '='");
      std::istringstream is(detail::strip(val.substr(0, eq)));
      std::string a, b;
      if (!(is >> a >> b)) throw std::invalid_argument("algebra file: pairing needs two labels");
      pairing_entries.emplace_back(a, b, Rational::parse_or_throw(detail::strip(val.substr(eq + 1))));
    } else if (key == "frobenius") {
      std::size_t eq = val.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("algebra file: frobenius needs '='");
      std::istringstream is(detail::strip(val.substr(0, eq)));
      std::string a, b;
      if (!(is >> a >> b)) throw std::invalid_argument("algebra file: frobenius needs two labels");
      mult_entries.emplace_back(a, b, detail::strip(val.substr(eq + 1)));
    } else if (key.size() > 1 && key[0] == 'h') {
      int k = std::stoi(key.substr(1));
      if (k < 3) throw std::invalid_argument("algebra file: h_k needs k >= 3");
      std::size_t eq = val.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("algebra file: h entry needs '='");
      std::istringstream is(detail::strip(val.substr(0, eq)));
      std::vector<std::string> tuple;
      std::string tok;
      while (is >> tok) tuple.push_back(tok);
      if (static_cast<int>(tuple.size()) != k)
        throw std::invalid_argument("algebra file: h" + std::to_string(k) + " entry arity mismatch");
      h_entries[k].push_back({tuple, Rational::parse_or_throw(detail::strip(val.substr(eq + 1)))});
    } else {
      throw std::invalid_argument("algebra file: unknown key " + key);
    }
  }

  if (labels.empty() && mode == "frobenius")
    throw std::invalid_argument("algebra file: empty basis");
  std::vector<Parity> pars;
  for (const std::string& l : labels) {
    auto it = parities.find(l);
    pars.push_back(it == parities.end() ? Parity::Even : it->second);
  }
  SuperSpace space(labels, pars);
  auto index = [&](const std::string& l) {
    auto i = space.index_of(l);
    if (!i) throw std::invalid_argument("algebra file: unknown label " + l);
    return *i;
  };
  Matrix pm = zero_matrix(space.dim(), space.dim());
  for (auto& [a, b, v] : pairing_entries) pm[index(a)][index(b)] = v;

  if (mode == "frobenius") {
    FrobeniusInput f;
    f.u = space;
    f.trace = pm;
    f.mult.assign(space.dim(),
                  std::vector<std::vector<Rational>>(space.dim(),
                                                     std::vector<Rational>(space.dim(), Rational(0))));
    for (auto& [a, b, rhs] : mult_entries) {
      // rhs: linear combination `c1 l1 + c2 l2 + l3` (missing coefficient = 1)
      std::istringstream is(rhs);
      std::string tok;
      Rational coef(1);
      bool haveCoef = false;
      while (is >> tok) {
        if (tok == "+") {
          coef = Rational(1);
          haveCoef = false;
          continue;
        }
        auto r = Rational::parse(tok);
        if (r && !haveCoef) {
          coef = *r;
          haveCoef = true;
          continue;
        }
        f.mult[index(a)][index(b)][index(tok)] += coef;
        coef = Rational(1);
        haveCoef = false;
      }
    }
    if (!h_entries.empty())
      throw std::invalid_argument("algebra file: explicit h entries need mode: direct");
    return build_from_frobenius(f, name);
  }

  // direct mode: the file describes PiU and the h_k arrays verbatim
  AInfinityAlgebra out{name, space, InnerProduct(space, pm), {}};
  for (auto& [k, entries] : h_entries) {
    GradedTensor t(space, k, Parity::Odd);
    for (auto& [tuple, v] : entries) {
      IndexTuple idx;
      for (const std::string& l : tuple) idx.push_back(index(l));
      t.add(idx, v);
    }
    if (!t.is_zero()) out.h.emplace(k, std::move(t));
  }
  ValidationReport r = validate(out);
  if (!r.ok) throw std::invalid_argument("algebra file: validation failed: " + r.failures.front());
  return out;
}

// `builtin:<name>` or a path to an .alg file.
inline AInfinityAlgebra load_algebra(const std::string& source) {
  if (source.rfind("builtin:", 0) == 0) return builtin_algebra(source.substr(8));
  std::ifstream in(source);
  if (!in) throw std::invalid_argument("cannot open algebra file: " + source);
  std::string name = source;
  std::size_t slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return parse_algebra_file(in, name);
}

}  // namespace rgc
