#include "csm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "format.hpp"

namespace csm {

MetricSet MetricSet::by_name(std::string_view coherence, std::string_view contrast,
                             std::string_view penalty) {
  if (coherence != "min") {
    throw InputError("unknown coherence metric '" + std::string(coherence) + "' (available: min)");
  }
  if (contrast != "absdiff") {
    throw InputError("unknown contrast metric '" + std::string(contrast) + "' (available: absdiff)");
  }
  if (penalty != "uniform") {
    throw InputError("unknown penalty '" + std::string(penalty) + "' (available: uniform)");
  }
  return MetricSet{};
}

namespace {

constexpr double kRelativeStep = 1e-3;
constexpr double kEqualityTolerance = 1e-12;

bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= kEqualityTolerance * std::max({1.0, std::abs(x), std::abs(y)});
}

void fail(AxiomCheck& check, double a, double b, std::string detail) {
  if (!check.passed) return;
  check.passed = false;
  check.counterexample = AxiomCounterexample{a, b, std::move(detail)};
}

}  // namespace

AxiomReport check_axioms(const EdgeScoreFn& metric, std::span<const std::pair<double, double>> samples) {
  if (samples.empty()) throw InputError("check_axioms needs at least one sample");
  AxiomReport report;
  for (auto [a, b] : samples) {
    if (a < 0.0 || b < 0.0) throw InputError("check_axioms samples must be non-negative");

    const double fab = metric(a, b);
    const double fba = metric(b, a);
    if (!nearly_equal(fab, fba)) {
      fail(report.symmetric, a, b,
           "f(a,b)=" + format_double(fab) + " but f(b,a)=" + format_double(fba));
    }

    for (double x : {a, b}) {
      if (double fxx = metric(x, x); !nearly_equal(fxx, 0.0)) {
        fail(report.zero, x, x, "f(x,x)=" + format_double(fxx));
      }
    }

    // Probe in the sample's own orientation: the smaller weight may sit on
    // either side.
    const bool a_is_low = a <= b;
    const double low = a_is_low ? a : b;
    const double high = a_is_low ? b : a;
    const double step = kRelativeStep * (high > 0.0 ? high : 1.0);
    auto eval = [&](double lo, double hi) { return a_is_low ? metric(lo, hi) : metric(hi, lo); };

    const double base = eval(low, high);
    if (double raised = eval(low, high + step); !(raised > base)) {
      fail(report.monotone, a, b,
           "raising the larger weight by " + format_double(step) + " gave " +
               format_double(raised) + " <= " + format_double(base));
    }
    if (low - step >= 0.0) {
      if (double lowered = eval(low - step, high); !(lowered > base)) {
        fail(report.monotone, a, b,
             "lowering the smaller weight by " + format_double(step) + " gave " +
                 format_double(lowered) + " <= " + format_double(base));
      }
    }
  }
  return report;
}

}  // namespace csm
