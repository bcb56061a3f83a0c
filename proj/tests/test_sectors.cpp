#include "doctest.h"

#include "ffvar/bigint.hpp"
#include "ffvar/sectors.hpp"

using namespace ffvar;

TEST_CASE("circle groups: size, trivial element, Swan parity, maximal break") {
  struct Point {
    int64_t q;
    int k;
  };
  for (const Point& p : {Point{5, 4}, Point{5, 6}, Point{13, 4}}) {
    SectorGroup sg(p.q, p.k);
    CHECK(sg.kappa() == p.k / 2);
    CHECK(BigInt(sg.sector_count()) == int_pow(BigInt(p.q), sg.kappa()));
    CHECK(sg.max_swan() == 2 * sg.kappa() - 1);

    bool saw_max = false;
    for (int64_t i = 0; i < sg.sector_count(); ++i) {
      auto xi = sg.character(i);
      if (sg.is_trivial(xi)) {
        CHECK(i == 0);
        continue;
      }
      int swan = sg.swan_conductor(xi);
      CHECK(swan % 2 == 1);
      CHECK(swan >= 1);
      CHECK(swan <= sg.max_swan());
      if (swan == sg.max_swan()) saw_max = true;
    }
    CHECK(saw_max);
  }
}
