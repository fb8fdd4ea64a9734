#include "mub/selftest.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "mub/combinatorics.hpp"
#include "mub/oracle.hpp"
#include "mub/specht.hpp"
#include "mub/wreath.hpp"

namespace mub {

namespace {

struct Runner {
  std::ostream &os;
  bool all = true;

  void check(const std::string &name, const std::function<bool(std::ostringstream &)> &f) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = f(detail);
    } catch (const std::exception &e) {
      detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    os << (ok ? "PASS " : "FAIL ") << name << " (" << secs << "s) " << detail.str() << "\n";
    all = all && ok;
  }
};

std::size_t sum_squares(const RepSet &rs) {
  std::size_t s = 0;
  for (const auto &[k, v] : rs) s += v.size() * v.size();
  return s;
}

}  // namespace

bool run_selftest(std::ostream &os, const SelftestOptions &opt) {
  Runner r{os};
  set_reverse_nu_order_for_testing(opt.corrupt_nu_order);

  r.check("bell", [](auto &d) {
    for (int n = 1; n <= 8; ++n)
      if (set_partitions(n, n).size() != bell_number(n)) {
        d << "n=" << n;
        return false;
      }
    return bell_number(8) == 4140 && bell_number(9) == 21147;
  });
  r.check("refinement_pairs", [](auto &d) {
    for (int t = 1; t <= 4; ++t)
      if (orbit_classes(t, t, t).size() != refinement_pair_count(t)) {
        d << "t=" << t;
        return false;
      }
    return refinement_pair_count(4) == 60 && refinement_pair_count(6) == 2471;
  });
  r.check("sk_sum_squares", [](auto &d) {
    const std::array<int, 3> cases[] = {{2, 1, 2}, {4, 2, 15}, {6, 3, 203}};
    for (auto [k, t, want] : cases) {
      RepSet rs;
      for (auto &[l, v] : sk_representative_set(k, t)) rs[BlockKey{l}] = v;
      d << "k=" << k << ",t=" << t << ":" << sum_squares(rs) << " ";
      if (sum_squares(rs) != static_cast<std::size_t>(want)) return false;
    }
    return true;
  });
  r.check("wreath_sum_squares", [](auto &d) {
    const std::array<int, 4> cases[] = {{2, 2, 1, 3}, {4, 4, 2, 60}};
    for (auto [dd, k, t, want] : cases) {
      auto s = sum_squares(wreath_representative_set(dd, k, t));
      d << "d=" << dd << ",k=" << k << ",t=" << t << ":" << s << " ";
      if (s != static_cast<std::size_t>(want)) return false;
    }
    return true;
  });
  r.check("total_dimension", [](auto &d) {
    for (int dd = 2; dd <= 3; ++dd)
      for (int k = 2; k <= 3; ++k)
        for (int t = 1; t <= 2; ++t) {
          auto rep = total_dimension_check(wreath_representative_set(dd, k, t), dd, k, t);
          if (!rep.ok) {
            d << "d=" << dd << ",k=" << k << ",t=" << t << " total=" << rep.total << " expected=" << rep.expected;
            return false;
          }
        }
    return true;
  });
  r.check("phi_oracle", [](auto &d) {
    for (int dd = 2; dd <= 3; ++dd)
      for (int k = 2; k <= 3; ++k)
        for (int t = 1; t <= 2; ++t) {
          auto rep = brute_force_phi_oracle(dd, k, t, Mode::Full, 20, 1e-8);
          if (!rep.ok()) {
            d << "d=" << dd << ",k=" << k << ",t=" << t << " " << rep.summary();
            return false;
          }
        }
    return true;
  });
  r.check("reducer_example", [](auto &d) {
    for (int dd : {2, 3, 6}) {
      Reducer red(dd, 3);
      auto f = red.reduce({{0, 0}, {0, 1}, {0, 2}});
      if (!(f.is_constant() && f.constant == Rational(1, dd * dd))) {
        d << "d=" << dd << " got " << f.to_string();
        return false;
      }
    }
    return true;
  });
  r.check("numeric_model", [](auto &d) {
    Reducer red(2, 2);
    MubModel model(2, 2);
    double worst = 0;
    for (int n = 0; n <= 5; ++n)
      for (int code = 0; code < (1 << (2 * n)); ++code) {
        Word w(n);
        for (int p = 0; p < n; ++p) w[p] = {(code >> (2 * p)) & 1, (code >> (2 * p + 1)) & 1};
        auto f = red.reduce(w);
        worst = std::max(worst, std::abs(f.evaluate(model_values(model, red)) - model.L_invariant(w)));
      }
    d << "max_error=" << worst;
    return worst < 1e-10;
  });

  set_reverse_nu_order_for_testing(false);
  return r.all;
}

}  // namespace mub
