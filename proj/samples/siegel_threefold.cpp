// Newton strata of the Siegel threefold: GSp4 with mu = (1,1,0,0).
// Prints the classes of B(G, mu), their strata dimensions and the Hasse diagram.

#include "nstrat/io.hpp"

#include <iostream>

int main() {
  using namespace nstrat;
  GroupDatum G = parse_group("gsp(n=4,d=1)");
  Cochar mu = parse_cochar(G, "1,1,0,0");

  BGmuReport r = bgmu_report(G, mu);
  std::cout << bgmu_table(r) << "\n" << bgmu_dot(r);

  VerificationReport v = verify_identities(G, mu);
  std::cout << "\n" << v.num_checks << " identity checks, " << v.failures.size() << " failures\n";
  return v.ok() && r.classes.size() == 3 ? 0 : 1;
}
