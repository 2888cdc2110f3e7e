#include "infotopo/divergences.hpp"

#include <array>
#include <utility>

namespace infotopo {

namespace {

void require_same_size(const PositivePoint &x, const PositivePoint &y) {
  if (x.size() != y.size())
    throw DimensionMismatch("dimensions " + std::to_string(x.size()) +
                            " and " + std::to_string(y.size()));
}

void require_simplex(const PositivePoint &x) {
  if (!on_simplex(x))
    throw DomainError("point does not lie on the probability simplex");
}

constexpr std::array<std::pair<Measure, std::string_view>, 10> kNames{{
    {Measure::KL, "kl"},
    {Measure::ItakuraSaito, "itakura-saito"},
    {Measure::JensenShannon, "js"},
    {Measure::JSMetric, "js-metric"},
    {Measure::FisherOrthant, "fisher-orthant"},
    {Measure::FisherSimplex, "fisher-simplex"},
    {Measure::BurgInfo, "burg-info"},
    {Measure::BurbeaRao, "burbea-rao"},
    {Measure::SquaredFisherOrthant, "sq-fisher-orthant"},
    {Measure::SquaredFisherSimplex, "sq-fisher-simplex"},
}};

} // namespace

bool is_metric(Measure m) {
  switch (m) {
  case Measure::JSMetric:
  case Measure::FisherOrthant:
  case Measure::FisherSimplex:
  case Measure::BurgInfo:
    return true;
  default:
    return false;
  }
}

bool is_symmetric(Measure m) {
  return m != Measure::KL && m != Measure::ItakuraSaito;
}

bool requires_simplex(Measure m) {
  return m == Measure::FisherSimplex || m == Measure::SquaredFisherSimplex;
}

std::string_view measure_name(Measure m) {
  for (const auto &[tag, name] : kNames)
    if (tag == m)
      return name;
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (const auto &[tag, n] : kNames)
    if (n == name)
      return tag;
  return std::nullopt;
}

double shannon_entropy(const PositivePoint &x) {
  return kernel::shannon_entropy(x.coords());
}

double burg_entropy(const PositivePoint &x) {
  return kernel::burg_entropy(x.coords());
}

double kl_divergence(const PositivePoint &x, const PositivePoint &y) {
  require_same_size(x, y);
  return kernel::kl_divergence(x.coords(), y.coords());
}

double itakura_saito(const PositivePoint &x, const PositivePoint &y) {
  require_same_size(x, y);
  return kernel::itakura_saito(x.coords(), y.coords());
}

double js_divergence(const PositivePoint &x, const PositivePoint &y) {
  require_same_size(x, y);
  return kernel::js_divergence(x.coords(), y.coords());
}

double js_metric(const PositivePoint &x, const PositivePoint &y) {
  return std::sqrt(js_divergence(x, y));
}

double fisher_orthant(const PositivePoint &x, const PositivePoint &y) {
  require_same_size(x, y);
  return kernel::fisher_orthant(x.coords(), y.coords());
}

double fisher_simplex(const SimplexPoint &x, const SimplexPoint &y) {
  require_same_size(x, y);
  return kernel::fisher_simplex(x.coords(), y.coords());
}

double burg_info_distance(const PositivePoint &x, const PositivePoint &y) {
  require_same_size(x, y);
  return kernel::burg_info_distance(x.coords(), y.coords());
}

double burbea_rao(const PositivePoint &x, const PositivePoint &y) {
  require_same_size(x, y);
  return kernel::burbea_rao(x.coords(), y.coords());
}

double evaluate(Measure m, const PositivePoint &x, const PositivePoint &y) {
  require_same_size(x, y);
  if (requires_simplex(m)) {
    require_simplex(x);
    require_simplex(y);
  }
  switch (m) {
  case Measure::KL:
    return kernel::kl_divergence(x.coords(), y.coords());
  case Measure::ItakuraSaito:
    return kernel::itakura_saito(x.coords(), y.coords());
  case Measure::JensenShannon:
    return kernel::js_divergence(x.coords(), y.coords());
  case Measure::JSMetric:
    return std::sqrt(kernel::js_divergence(x.coords(), y.coords()));
  case Measure::FisherOrthant:
    return kernel::fisher_orthant(x.coords(), y.coords());
  case Measure::FisherSimplex:
    return kernel::fisher_simplex(x.coords(), y.coords());
  case Measure::BurgInfo:
    return kernel::burg_info_distance(x.coords(), y.coords());
  case Measure::BurbeaRao:
    return kernel::burbea_rao(x.coords(), y.coords());
  case Measure::SquaredFisherOrthant: {
    const double d = kernel::fisher_orthant(x.coords(), y.coords());
    return d * d;
  }
  case Measure::SquaredFisherSimplex: {
    const double d = kernel::fisher_simplex(x.coords(), y.coords());
    return d * d;
  }
  }
  throw DomainError("unknown measure");
}

} // namespace infotopo
