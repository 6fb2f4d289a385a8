#pragma once

// The default verification battery: a deterministic grid of contexts,
// weights, and degrees over which every identity is proved (grid mode) or
// series-checked. The CLI's `verify --battery default` and the acceptance
// runner both drive these functions so there is exactly one definition of
// the grid.

#include <array>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "characters.hpp"
#include "euler.hpp"
#include "identities.hpp"

namespace etwist {

struct BatteryContextSpec {
  unsigned p = 3, s = 0, d = 1;
  unsigned char_index = 0;  // into enumerate_characters(d)
  unsigned xi_exp = 0;      // xi = zeta_{p^s}^{xi_exp}

  std::string label() const {
    return "p=" + std::to_string(p) + " s=" + std::to_string(s) +
           " d=" + std::to_string(d) + " chi=" + std::to_string(char_index) +
           " j=" + std::to_string(xi_exp);
  }
};

// p in {3,5} x s in {0,1} x d in {1,3,5} x every character mod d x j in {0,1}
inline std::vector<BatteryContextSpec> battery_contexts() {
  std::vector<BatteryContextSpec> out;
  for (unsigned p : {3u, 5u})
    for (unsigned s : {0u, 1u})
      for (unsigned d : {1u, 3u, 5u}) {
        const unsigned nchars = euler_phi(d);
        for (unsigned c = 0; c < nchars; ++c)
          for (unsigned j : {0u, 1u}) out.push_back({p, s, d, c, j});
      }
  return out;
}

inline EulerContext make_battery_context(const BatteryContextSpec& spec) {
  auto chars = enumerate_characters(spec.d);
  return EulerContext(spec.p, spec.s, spec.d, chars.at(spec.char_index),
                      spec.xi_exp);
}

// weight triples exercised per identity; the mixed-parity triple only
// applies where the hypotheses allow even weights
inline std::vector<std::array<unsigned, 3>> battery_weights(int id) {
  std::vector<std::array<unsigned, 3>> w = {
      {1, 1, 1}, {1, 3, 5}, {3, 5, 7}};
  if (!theorem_requires_odd_w(id)) w.push_back({1, 2, 3});
  return w;
}

struct BatteryFailure {
  BatteryContextSpec spec;
  int theorem = 0;
  std::array<unsigned, 3> w{1, 1, 1};
  unsigned n = 0;
  IdentityReport report;
};

struct BatteryResult {
  bool pass = true;
  unsigned long checks = 0;     // grid instances evaluated
  std::vector<BatteryFailure> failures;
};

inline unsigned battery_thread_count(unsigned long jobs) {
  unsigned n = 1;
  if (const char* env = std::getenv("ETWIST_THREADS")) {
    long v = std::atol(env);
    if (v > 0) n = static_cast<unsigned>(v);
  }
  if (n > jobs && jobs > 0) n = static_cast<unsigned>(jobs);
  return n;
}

namespace detail {

// Runs fn(spec_index) over all contexts, honoring ETWIST_THREADS; results
// are merged in context order so output is deterministic.
template <typename Fn>
inline BatteryResult run_per_context(const std::vector<BatteryContextSpec>& specs,
                                     Fn&& fn) {
  std::vector<BatteryResult> partial(specs.size());
  const unsigned threads = battery_thread_count(specs.size());
  if (threads <= 1) {
    for (size_t i = 0; i < specs.size(); ++i) partial[i] = fn(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < specs.size();
             i = next.fetch_add(1))
          partial[i] = fn(i);
      });
    for (auto& th : pool) th.join();
  }
  BatteryResult all;
  for (auto& r : partial) {
    all.pass = all.pass && r.pass;
    all.checks += r.checks;
    for (auto& f : r.failures) all.failures.push_back(std::move(f));
  }
  return all;
}

}  // namespace detail

// Grid-proves each requested identity over every battery context and
// weight triple, degrees 0..n_max.
inline BatteryResult run_theorem_battery(const std::vector<int>& ids,
                                         unsigned n_max = 5) {
  auto specs = battery_contexts();
  return detail::run_per_context(specs, [&](size_t si) {
    BatteryResult res;
    EulerContext ctx = make_battery_context(specs[si]);
    for (int id : ids)
      for (const auto& w : battery_weights(id))
        for (unsigned n = 0; n <= n_max; ++n) {
          ProofReport pr = polynomial_identity_proof(id, ctx, n, w);
          res.checks += pr.instances;
          if (!pr.pass) {
            res.pass = false;
            res.failures.push_back({specs[si], id, w, n, *pr.failure});
          }
        }
    return res;
  });
}

// Grid-proves the index-permutation deduplication comparisons (identities
// 4 and 8) over the odd-weight battery.
inline BatteryResult run_dedup_battery(unsigned n_max = 5) {
  auto specs = battery_contexts();
  return detail::run_per_context(specs, [&](size_t si) {
    BatteryResult res;
    EulerContext ctx = make_battery_context(specs[si]);
    for (int id : {4, 8})
      for (const auto& w : battery_weights(id))
        for (unsigned n = 0; n <= n_max; ++n) {
          ProofReport pr = dedup_identity_proof(id, ctx, n, w);
          res.checks += pr.instances;
          if (!pr.pass) {
            res.pass = false;
            res.failures.push_back({specs[si], id, w, n, *pr.failure});
          }
        }
    return res;
  });
}

struct LambdaBatteryFailure {
  BatteryContextSpec spec;
  LambdaReport report;
};

struct LambdaBatteryResult {
  bool pass = true;
  unsigned long checks = 0;
  std::vector<LambdaBatteryFailure> failures;
};

// Series cross-checks at the given truncation order: all quotient families
// over p=3, s=1, d=3, every character mod 3, j in {0,1}, weights (1,3,5).
inline LambdaBatteryResult run_lambda_battery(unsigned order = 8) {
  LambdaBatteryResult all;
  const std::array<unsigned, 3> w{1, 3, 5};
  for (unsigned c = 0; c < 2; ++c)
    for (unsigned j : {0u, 1u}) {
      BatteryContextSpec spec{3, 1, 3, c, j};
      EulerContext ctx = make_battery_context(spec);
      // nonzero distinct y values keep the exponential prefactors honest
      std::vector<FieldElement> ys = {
          FieldElement(ctx.field(), Rat(1)),
          FieldElement(ctx.field(), detail::make_rat(1, 2)),
          FieldElement(ctx.field(), Rat(2))};
      auto run = [&](LambdaFamily fam, int i, unsigned need_y) {
        SymmetryInstance inst{ctx, 0, w,
                              std::vector<FieldElement>(ys.begin(),
                                                        ys.begin() + need_y)};
        LambdaReport rep = lambda_series_check(fam, i, inst, order);
        ++all.checks;
        if (!rep.pass) {
          all.pass = false;
          all.failures.push_back({spec, std::move(rep)});
        }
      };
      for (int i = 0; i <= 3; ++i) run(LambdaFamily::L23, i, 3 - i);
      for (int i = 0; i <= 3; ++i) run(LambdaFamily::L13, i, 3 - i);
      run(LambdaFamily::L12, 0, 1);
      run(LambdaFamily::L12, 1, 0);
    }
  return all;
}

}  // namespace etwist
