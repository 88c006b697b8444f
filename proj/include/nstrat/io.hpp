#pragma once

// Text formats: group specs, cocharacter and element literals, JSON reports and
// DOT output of B(G, mu).

#include "dimensions.hpp"
#include "el_charts.hpp"

#include <json.hpp>

#include <cctype>

namespace nlohmann {
template <>
struct adl_serializer<mpq_class> {
  static void to_json(json& j, const mpq_class& q) { j = q.get_str(); }
  static void from_json(const json& j, mpq_class& q) { q = nstrat::rational_from_string(j.get<std::string>()); }
};
template <>
struct adl_serializer<mpz_class> {
  static void to_json(json& j, const mpz_class& z) { j = z.get_str(); }
  static void from_json(const json& j, mpz_class& z) {
    if (z.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer literal");
  }
};
}  // namespace nlohmann

namespace nstrat {

using json = nlohmann::json;

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

// ---------------------------------------------------------------------------
// group specs: gl(n=<int>,d=<int>), gsp(...), gu(...)

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ == s_.size();
  }
  bool try_char(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_char(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) throw ParseError("expected identifier", pos_);
    return std::string(s_.substr(start, pos_ - start));
  }
  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) throw ParseError("expected integer", start);
    try {
      return std::stoll(std::string(s_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      throw ParseError("integer out of range", start);
    }
  }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

struct GroupSpec {
  GroupKind kind;
  int n, d;
};

inline GroupSpec parse_group_spec(std::string_view text) {
  Scanner sc(text);
  std::size_t kpos = (sc.skip_ws(), sc.pos());
  std::string k = sc.word();
  GroupKind kind;
  if (k == "gl")
    kind = GroupKind::RES_GL;
  else if (k == "gsp")
    kind = GroupKind::RES_GSP;
  else if (k == "gu")
    kind = GroupKind::RES_GU;
  else
    throw ParseError("unknown group kind '" + k + "' (expected gl, gsp or gu)", kpos);
  sc.expect('(');
  std::optional<long long> n, d;
  for (int i = 0; i < 2; ++i) {
    if (i > 0) sc.expect(',');
    std::size_t p = (sc.skip_ws(), sc.pos());
    std::string key = sc.word();
    sc.expect('=');
    long long v = sc.integer();
    auto& slot = key == "n" ? n : key == "d" ? d : throw ParseError("unknown parameter '" + key + "'", p);
    if (slot) throw ParseError("parameter '" + key + "' given twice", p);
    if (v < 1 || v > 64) throw ParseError("parameter '" + key + "' out of range", p);
    slot = v;
  }
  sc.expect(')');
  if (!sc.done()) throw ParseError("trailing characters", sc.pos());
  return {kind, static_cast<int>(*n), static_cast<int>(*d)};
}

inline GroupDatum parse_group(std::string_view text) {
  GroupSpec s = parse_group_spec(text);
  return build_group(s.kind, s.n, s.d);
}

// ---------------------------------------------------------------------------
// cocharacter literals: d blocks of n integers, blocks separated by ';'
// (a single block with all d*n entries is also accepted)

inline Cochar parse_cochar(const GroupDatum& G, std::string_view text) {
  Scanner sc(text);
  std::vector<std::vector<long long>> blocks(1);
  for (;;) {
    blocks.back().push_back(sc.integer());
    if (sc.try_char(',')) continue;
    if (sc.try_char(';')) {
      blocks.emplace_back();
      continue;
    }
    break;
  }
  if (!sc.done()) throw ParseError("unexpected character in cocharacter literal", sc.pos());
  Cochar out;
  if (blocks.size() == 1 && static_cast<int>(blocks[0].size()) == G.N) {
    out = blocks[0];
  } else {
    if (static_cast<int>(blocks.size()) != G.d)
      throw std::invalid_argument("cocharacter literal needs " + std::to_string(G.d) + " blocks for " + G.name());
    for (auto& b : blocks) {
      if (static_cast<int>(b.size()) != G.n)
        throw std::invalid_argument("each block needs " + std::to_string(G.n) + " entries for " + G.name());
      out.insert(out.end(), b.begin(), b.end());
    }
  }
  if (!satisfies_constraints(G, out)) throw std::invalid_argument("cocharacter violates the lattice constraints of " + G.name());
  return out;
}

template <class V>
std::string format_vector(const GroupDatum& G, const V& v) {
  std::ostringstream os;
  for (int a = 0; a < G.N; ++a) {
    if (a > 0) os << (G.index_in_slot(a) == 0 ? ";" : ",");
    os << v[a];
  }
  return os.str();
}

inline std::vector<std::string> vector_strings(const RatCochar& v) {
  std::vector<std::string> out;
  for (auto& x : v) out.push_back(x.get_str());
  return out;
}

// ---------------------------------------------------------------------------
// elements: "<cocharacter>|<finite part>", finite part "id" or a word in s1 s2 ...,
// with generators prefixed by their slot (t0:s1) when d > 1

// Simple positions per slot, in the order of the generators s1, s2, ...
inline std::vector<std::vector<int>> generators_by_slot(const GroupDatum& G) {
  std::vector<std::vector<int>> out(G.d);
  for (int k = 0; k < G.num_simple(); ++k) out[G.simple_slot[k]].push_back(k);
  for (auto& v : out)
    std::sort(v.begin(), v.end(), [&](int a, int b) { return G.roots[G.simple[a]].a < G.roots[G.simple[b]].a; });
  return out;
}

inline WeylElt parse_weyl(const GroupDatum& G, std::string_view text) {
  auto gens = generators_by_slot(G);
  Scanner sc(text);
  if (sc.done()) throw ParseError("empty finite part", 0);
  if (sc.word() == "id") {
    if (!sc.done()) throw ParseError("trailing characters after 'id'", sc.pos());
    return weyl_identity(G);
  }
  Scanner sc2(text);
  std::vector<int> word;
  while (!sc2.done()) {
    std::size_t p = (sc2.skip_ws(), sc2.pos());
    std::string tok = sc2.word();
    int slot = 0;
    if (tok.size() > 1 && tok[0] == 't') {
      if (!sc2.try_char(':')) throw ParseError("expected ':' after slot prefix", sc2.pos());
      slot = std::stoi(tok.substr(1));
      p = (sc2.skip_ws(), sc2.pos());
      tok = sc2.word();
    } else if (G.d > 1) {
      throw ParseError("generator needs a slot prefix such as t0: for d > 1", p);
    }
    if (tok.size() < 2 || tok[0] != 's' || !std::all_of(tok.begin() + 1, tok.end(), ::isdigit))
      throw ParseError("expected generator s<k>", p);
    int k = std::stoi(tok.substr(1));
    if (slot < 0 || slot >= G.d || gens[slot].empty()) throw ParseError("slot carries no generators", p);
    if (k < 1 || k > static_cast<int>(gens[slot].size())) throw ParseError("generator index out of range", p);
    word.push_back(gens[slot][k - 1]);
  }
  return from_word(G, word);
}

inline std::string format_weyl(const GroupDatum& G, const WeylElt& w) {
  auto word = reduced_word(G, w);
  if (word.empty()) return "id";
  auto gens = generators_by_slot(G);
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    int k = word[i], slot = G.simple_slot[k];
    int idx = static_cast<int>(std::find(gens[slot].begin(), gens[slot].end(), k) - gens[slot].begin()) + 1;
    if (i > 0) os << ' ';
    if (G.d > 1) os << 't' << slot << ':';
    os << 's' << idx;
  }
  return os.str();
}

inline ExtAffElt parse_element(const GroupDatum& G, std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw ParseError("element literal needs '|' between translation and finite part", 0);
  return {parse_cochar(G, text.substr(0, bar)), parse_weyl(G, text.substr(bar + 1))};
}

inline std::string format_element(const GroupDatum& G, const ExtAffElt& x) {
  return format_vector(G, x.lam) + "|" + format_weyl(G, x.w);
}

inline std::vector<int> parse_int_list(std::string_view text) {
  Scanner sc(text);
  std::vector<int> out;
  do {
    long long v = sc.integer();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) throw ParseError("value out of range", sc.pos());
    out.push_back(static_cast<int>(v));
  } while (sc.try_char(','));
  if (!sc.done()) throw ParseError("unexpected character in list", sc.pos());
  return out;
}

// ---------------------------------------------------------------------------
// reports

struct PresentationReport {
  std::string free_rank;
  std::vector<std::string> torsion;
  bool operator==(const PresentationReport&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PresentationReport, free_rank, torsion)

inline PresentationReport presentation_report(const AbelianPresentation& p) {
  PresentationReport r{std::to_string(p.free_rank), {}};
  for (auto& t : p.torsion_orders) r.torsion.push_back(t.get_str());
  return r;
}

struct DescribeReport {
  std::string group;
  std::vector<std::string> simple_roots;    // "e_a - e_b" on ambient indices (slot, i)
  std::vector<std::string> simple_coroots;  // cocharacter literals
  std::vector<std::vector<std::string>> cartan;
  std::vector<std::vector<std::string>> galois_orbits;
  std::vector<std::string> rho;
  std::vector<std::vector<std::string>> orbit_weights;
  PresentationReport pi1, pi1_gamma;
  std::string weyl_order;
  bool operator==(const DescribeReport&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DescribeReport, group, simple_roots, simple_coroots, cartan, galois_orbits, rho,
                                   orbit_weights, pi1, pi1_gamma, weyl_order)

inline std::string ambient_label(const GroupDatum& G, int a) {
  return "e(" + std::to_string(G.slot(a)) + "," + std::to_string(G.index_in_slot(a) + 1) + ")";
}

inline DescribeReport describe(const GroupDatum& G) {
  DescribeReport r;
  r.group = G.name();
  for (int k = 0; k < G.num_simple(); ++k) {
    const Root& rt = G.roots[G.simple[k]];
    r.simple_roots.push_back(ambient_label(G, rt.a) + " - " + ambient_label(G, rt.b));
    r.simple_coroots.push_back(format_vector(G, G.simple_coroots[k]));
    std::vector<std::string> row;
    for (int j = 0; j < G.num_simple(); ++j) row.push_back(std::to_string(G.cartan[k][j]));
    r.cartan.push_back(row);
  }
  for (auto& orb : G.orbits) {
    std::vector<std::string> o;
    for (int k : orb) o.push_back(std::to_string(k + 1));
    r.galois_orbits.push_back(o);
  }
  r.rho = vector_strings(G.rho);
  for (auto& w : G.orbit_weights) r.orbit_weights.push_back(vector_strings(w));
  r.pi1 = presentation_report(G.pi1);
  r.pi1_gamma = presentation_report(G.pi1_gamma);
  r.weyl_order = std::to_string(weyl_elements(G).size());
  return r;
}

inline std::string presentation_text(const PresentationReport& p) {
  std::vector<std::string> parts;
  if (p.free_rank != "0") parts.push_back(p.free_rank == "1" ? "Z" : "Z^" + p.free_rank);
  for (auto& t : p.torsion) parts.push_back("Z/" + t);
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

inline std::string describe_text(const DescribeReport& r) {
  std::ostringstream os;
  os << "group        " << r.group << "\n";
  os << "simple roots " << r.simple_roots.size() << "\n";
  for (std::size_t k = 0; k < r.simple_roots.size(); ++k)
    os << "  s" << k + 1 << "  root " << r.simple_roots[k] << "   coroot " << r.simple_coroots[k] << "\n";
  os << "cartan\n";
  for (auto& row : r.cartan) {
    os << " ";
    for (auto& x : row) os << ' ' << std::setw(2) << x;
    os << "\n";
  }
  os << "galois orbits";
  for (auto& o : r.galois_orbits) {
    os << " {";
    for (std::size_t i = 0; i < o.size(); ++i) os << (i ? "," : "") << "s" << o[i];
    os << "}";
  }
  os << "\nrho          ";
  for (std::size_t i = 0; i < r.rho.size(); ++i) os << (i ? " " : "") << r.rho[i];
  os << "\norbit weights\n";
  for (auto& w : r.orbit_weights) {
    os << " ";
    for (auto& x : w) os << ' ' << x;
    os << "\n";
  }
  os << "pi1          " << presentation_text(r.pi1) << "\n";
  os << "pi1_Gamma    " << presentation_text(r.pi1_gamma) << "\n";
  os << "|W|          " << r.weyl_order << "\n";
  return os.str();
}

struct ClassRow {
  std::vector<std::string> nu;
  std::vector<std::string> kappa;
  std::string defect, dim_newton, dim_rz, dim_central_leaf, chain_to_mu;
  bool operator==(const ClassRow&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassRow, nu, kappa, defect, dim_newton, dim_rz, dim_central_leaf, chain_to_mu)

struct BGmuReport {
  std::string group;
  std::string mu;
  std::vector<ClassRow> classes;
  std::vector<std::array<int, 2>> edges;  // [lower, upper] covering pairs
  bool operator==(const BGmuReport&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BGmuReport, group, mu, classes, edges)

inline BGmuReport bgmu_report(const GroupDatum& G, const Cochar& mu) {
  auto cls = enumerate_BGmu_checked(G, mu);
  auto reps = stratum_reports(G, mu, cls);
  BGmuReport r;
  r.group = G.name();
  r.mu = format_vector(G, mu);
  for (auto& s : reps) {
    ClassRow row;
    row.nu = vector_strings(s.cls.nu);
    for (auto& k : s.cls.kappa) row.kappa.push_back(k.get_str());
    row.defect = std::to_string(s.defect);
    row.dim_newton = s.dim_newton.get_str();
    row.dim_rz = s.dim_rz.get_str();
    row.dim_central_leaf = s.dim_central_leaf.get_str();
    row.chain_to_mu = std::to_string(s.chain_to_mu);
    r.classes.push_back(row);
  }
  for (auto [i, j] : hasse_edges(G, cls)) r.edges.push_back({i, j});
  return r;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline std::string bgmu_table(const BGmuReport& r) {
  std::vector<std::array<std::string, 8>> rows;
  rows.push_back({"#", "nu", "kappa", "defect", "dim", "dim_rz", "dim_leaf", "chain"});
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    rows.push_back({std::to_string(i), "(" + join(c.nu, ",") + ")", "(" + join(c.kappa, ",") + ")", c.defect,
                    c.dim_newton, c.dim_rz, c.dim_central_leaf, c.chain_to_mu});
  }
  std::array<std::size_t, 8> width{};
  for (auto& row : rows)
    for (std::size_t k = 0; k < 8; ++k) width[k] = std::max(width[k], row[k].size());
  std::ostringstream os;
  os << r.group << "  mu = " << r.mu << "  (" << r.classes.size() << " classes)\n";
  for (auto& row : rows) {
    for (std::size_t k = 0; k < 8; ++k) os << (k ? "  " : "") << std::left << std::setw(static_cast<int>(width[k])) << row[k];
    os << "\n";
  }
  return os.str();
}

inline std::string bgmu_dot(const BGmuReport& r) {
  std::ostringstream os;
  os << "digraph BGmu {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i)
    os << "  c" << i << " [label=\"ν=(" << join(r.classes[i].nu, ",") << "), dim=" << r.classes[i].dim_newton
       << "\"];\n";
  for (auto& e : r.edges) os << "  c" << e[0] << " -> c" << e[1] << ";\n";
  os << "}\n";
  return os.str();
}

struct EOReport {
  std::string group, element, w, mu;
  std::string length_w, length_b, length_w_tau, iterations;
  bool sigma_straight = false;
  bool fundamental = false;
  bool operator==(const EOReport&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EOReport, group, element, w, mu, length_w, length_b, length_w_tau, iterations,
                                   sigma_straight, fundamental)

inline EOReport eo_report(const GroupDatum& G, const ExtAffElt& b) {
  TruncationResult t = eo_truncation(G, b);
  EOReport r;
  r.group = G.name();
  r.element = format_element(G, b);
  r.w = format_weyl(G, t.w);
  r.mu = format_vector(G, t.mu);
  r.length_w = std::to_string(length_finite(G, t.w));
  r.length_b = std::to_string(length(G, b));
  r.length_w_tau = std::to_string(length(G, from_weyl(G, t.w) * t.tau));
  r.iterations = std::to_string(t.iterations);
  r.sigma_straight = is_sigma_straight(G, b);
  r.fundamental = is_fundamental(G, b).has_value();
  return r;
}

inline std::string eo_text(const EOReport& r) {
  std::ostringstream os;
  os << "group         " << r.group << "\n"
     << "element       " << r.element << "\n"
     << "truncation    w = " << r.w << ", mu = " << r.mu << "\n"
     << "l(w)          " << r.length_w << "\n"
     << "l(b)          " << r.length_b << "  (l(w tau_mu) = " << r.length_w_tau << ")\n"
     << "iterations    " << r.iterations << "\n"
     << "sigma-straight: " << (r.sigma_straight ? "true" : "false") << "\n"
     << "fundamental:    " << (r.fundamental ? "true" : "false") << "\n";
  return os.str();
}

struct RZRow {
  std::vector<std::string> nu;
  std::string dim_rz, dim_rz_floor, defect;
  bool superbasic = false;
  std::string reduction_levi;  // simple positions, empty when not applicable
  std::string reduction_value;
  bool operator==(const RZRow&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RZRow, nu, dim_rz, dim_rz_floor, defect, superbasic, reduction_levi, reduction_value)

struct RZReport {
  std::string group, mu;
  std::vector<RZRow> classes;
  bool operator==(const RZReport&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RZReport, group, mu, classes)

inline std::string mask_text(const GroupDatum& G, Mask J) {
  std::vector<std::string> v;
  for (int k = 0; k < G.num_simple(); ++k)
    if (mask_has(J, k)) v.push_back("s" + std::to_string(k + 1));
  return "{" + join(v, ",") + "}";
}

inline RZRow rz_row(const GroupDatum& G, const Cochar& mu, const SigmaClass& c) {
  RZRow row;
  row.nu = vector_strings(c.nu);
  row.dim_rz = dim_rz(G, mu, c).get_str();
  row.dim_rz_floor = dim_rz_floor(G, mu, c).get_str();
  row.defect = std::to_string(defect(G, c));
  row.superbasic = is_superbasic(G, c);
  if (superbasic_levi(G, c)) {
    ReductionResult red = reduction_check(G, mu, c);
    if (!red.ok()) throw std::logic_error("Levi reduction value " + red.rhs.get_str() + " differs from " + red.lhs.get_str());
    row.reduction_levi = mask_text(G, red.J);
    row.reduction_value = red.rhs.get_str();
  }
  return row;
}

inline std::string rz_table(const RZReport& r) {
  std::ostringstream os;
  os << r.group << "  mu = " << r.mu << "\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    os << "  [" << i << "] nu=(" << join(c.nu, ",") << ")  dim_rz=" << c.dim_rz << "  floor_sum=" << c.dim_rz_floor
       << "  defect=" << c.defect << (c.superbasic ? "  superbasic" : "");
    if (!c.reduction_levi.empty()) os << "  levi " << c.reduction_levi << " gives " << c.reduction_value;
    os << "\n";
  }
  return os.str();
}

struct ChartRow {
  std::string b0;
  std::string eps;
  std::string v_count;
  bool operator==(const ChartRow&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ChartRow, b0, eps, v_count)

struct ELReport {
  std::string d, h;
  std::vector<std::string> m_seq;
  std::string num_charts, max_v, floor_formula;
  std::vector<ChartRow> charts;
  bool operator==(const ELReport&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ELReport, d, h, m_seq, num_charts, max_v, floor_formula, charts)

inline ELReport el_report(const ELChartParams& p) {
  ELReport r;
  r.d = std::to_string(p.d);
  r.h = std::to_string(p.h);
  for (int v : p.m_seq) r.m_seq.push_back(std::to_string(v));
  auto charts = enumerate_charts(p);
  long long best = -1;
  for (auto& c : charts) {
    std::string e;
    for (int x : c.eps) e += static_cast<char>('0' + x);
    long long v = static_cast<long long>(v_count(c));
    best = std::max(best, v);
    r.charts.push_back({std::to_string(c.b0), e, std::to_string(v)});
  }
  r.num_charts = std::to_string(charts.size());
  r.max_v = std::to_string(best);
  r.floor_formula = std::to_string(el_floor_formula(p));
  return r;
}

inline std::string el_text(const ELReport& r, bool list) {
  std::ostringstream os;
  os << "d=" << r.d << " h=" << r.h << " m=(" << join(r.m_seq, ",") << ")\n"
     << "normalized small EL-charts: " << r.num_charts << "\n"
     << "max #V = " << r.max_v << "\n"
     << "floor formula = " << r.floor_formula << "\n";
  if (list)
    for (auto& c : r.charts) os << "  b0=" << c.b0 << " eps=" << c.eps << " #V=" << c.v_count << "\n";
  return os.str();
}

struct VerifyReport {
  std::string group, mu, classes, checks;
  std::vector<std::string> failures;
  bool operator==(const VerifyReport&) const = default;
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VerifyReport, group, mu, classes, checks, failures)

inline VerifyReport verify_report(const GroupDatum& G, const Cochar& mu) {
  VerificationReport v = verify_identities(G, mu);
  return {G.name(), format_vector(G, mu), std::to_string(v.num_classes), std::to_string(v.num_checks), v.failures};
}

template <class T>
T round_trip(const T& x) {
  return json::parse(json(x).dump()).template get<T>();
}

}  // namespace nstrat
