// nstrat: command-line front end for the nstrat library.
//
//   nstrat describe <group>
//   nstrat bgmu <group> --mu <cochar> [--format table|json|dot]
//   nstrat eo <group> --element "<cochar>|<word>" [--format text|json]
//   nstrat rzdim <group> --mu <cochar> [--class k | --nu <rationals>] [--format table|json]
//   nstrat elchart --d <int> --h <int> --m <list> [--list] [--format text|json]
//   nstrat verify <group> --mu <cochar> [--format text|json]
//
// Exit status: 0 success, 1 usage or input error, 2 verification failure.

#include "nstrat/io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace nstrat;

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RatCochar parse_nu(const GroupDatum& G, const std::string& text) {
  RatCochar out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw std::invalid_argument("empty entry in Newton point literal");
    out.push_back(rational_from_string(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ';')
      flush();
    else if (!std::isspace(static_cast<unsigned char>(c)))
      cur += c;
  }
  flush();
  if (static_cast<int>(out.size()) != G.N)
    throw std::invalid_argument("Newton point needs " + std::to_string(G.N) + " entries for " + G.name());
  return out;
}

void emit(const std::string& format, const json& j, const std::string& text) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton strata invariants with exact arithmetic"};
  app.require_subcommand(1);

  std::string group, mu_text, element, nu_text, format;
  int class_index = -1, d = 0, h = 0;
  std::vector<int> m_seq;
  bool list = false;

  auto* describe_cmd = app.add_subcommand("describe", "root datum, Galois orbits, pi_1 and pi_1 coinvariants");
  describe_cmd->add_option("group", group, "gl|gsp|gu(n=<int>,d=<int>)")->required();
  describe_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}))->default_val("text");

  auto* bgmu_cmd = app.add_subcommand("bgmu", "classes of B(G, mu) with dimensions and chain lengths");
  bgmu_cmd->add_option("group", group)->required();
  bgmu_cmd->add_option("--mu", mu_text, "dominant cocharacter, blocks separated by ';'")->required();
  bgmu_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json", "dot"}))->default_val("table");

  auto* eo_cmd = app.add_subcommand("eo", "Ekedahl-Oort truncation of an extended affine Weyl group element");
  eo_cmd->add_option("group", group)->required();
  eo_cmd->add_option("--element", element, "<cochar>|<word in s1 s2 ...> or <cochar>|id")->required();
  eo_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}))->default_val("text");

  auto* rz_cmd = app.add_subcommand("rzdim", "Rapoport-Zink dimensions with the Levi reduction cross-check");
  rz_cmd->add_option("group", group)->required();
  rz_cmd->add_option("--mu", mu_text)->required();
  auto* class_opt = rz_cmd->add_option("--class", class_index, "row index in the bgmu listing");
  auto* nu_opt = rz_cmd->add_option("--nu", nu_text, "Newton point of the class");
  class_opt->excludes(nu_opt);
  rz_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}))->default_val("table");

  auto* el_cmd = app.add_subcommand("elchart", "superbasic EL-charts and their dimension");
  el_cmd->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  el_cmd->add_option("--d", d, "number of embeddings")->required()->check(CLI::Range(1, 16));
  el_cmd->add_option("--h", h, "height")->required()->check(CLI::Range(1, 16));
  el_cmd->add_option("--m", m_seq, "m_tau for each embedding, comma separated")->required()->delimiter(',');
  el_cmd->add_flag("--list", list, "print every chart");
  el_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}))->default_val("text");

  auto* verify_cmd = app.add_subcommand("verify", "check all closed-form identities on B(G, mu)");
  verify_cmd->add_option("group", group)->required();
  verify_cmd->add_option("--mu", mu_text)->required();
  verify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}))->default_val("text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*describe_cmd) {
      auto G = parse_group(group);
      auto r = describe(G);
      emit(format, r, describe_text(r));
    } else if (*bgmu_cmd) {
      auto G = parse_group(group);
      auto r = bgmu_report(G, parse_cochar(G, mu_text));
      if (format == "dot")
        std::cout << bgmu_dot(r);
      else
        emit(format, r, bgmu_table(r));
    } else if (*eo_cmd) {
      auto G = parse_group(group);
      auto r = eo_report(G, parse_element(G, element));
      emit(format, r, eo_text(r));
    } else if (*rz_cmd) {
      auto G = parse_group(group);
      auto mu = parse_cochar(G, mu_text);
      auto cls = enumerate_BGmu_checked(G, mu);
      RZReport r{G.name(), format_vector(G, mu), {}};
      if (*class_opt) {
        if (class_index < 0 || class_index >= static_cast<int>(cls.size()))
          throw std::invalid_argument("class index out of range (B(G, mu) has " + std::to_string(cls.size()) + " classes)");
        r.classes.push_back(rz_row(G, mu, cls[class_index]));
      } else if (*nu_opt) {
        RatCochar nu = parse_nu(G, nu_text);
        bool found = false;
        for (auto& c : cls)
          if (c.nu == nu) {
            r.classes.push_back(rz_row(G, mu, c));
            found = true;
          }
        if (!found) throw std::invalid_argument("no class of B(G, mu) has this Newton point");
      } else {
        for (auto& c : cls) r.classes.push_back(rz_row(G, mu, c));
      }
      emit(format, r, rz_table(r));
    } else if (*el_cmd) {
      ELChartParams p{d, h, m_seq};
      check_params(p);
      auto r = el_report(p);
      if (r.max_v != r.floor_formula) {
        emit(format, r, el_text(r, list));
        throw VerificationFailed("chart maximum differs from the floor formula");
      }
      emit(format, r, el_text(r, list));
    } else if (*verify_cmd) {
      auto G = parse_group(group);
      auto r = verify_report(G, parse_cochar(G, mu_text));
      std::ostringstream os;
      if (r.failures.empty()) {
        os << "all identities hold (" << r.classes << " classes)\n";
      } else {
        for (auto& f : r.failures) os << "FAIL " << f << "\n";
        os << r.failures.size() << " of " << r.checks << " checks failed (" << r.classes << " classes)\n";
      }
      emit(format, r, os.str());
      if (!r.failures.empty()) return kExitVerify;
    }
  } catch (const VerificationFailed& e) {
    std::cerr << "nstrat: verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::invalid_argument& e) {
    std::cerr << "nstrat: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "nstrat: internal check failed: " << e.what() << "\n";
    return kExitVerify;
  }
  return 0;
}
