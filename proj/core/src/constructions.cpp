#include "nonholonomy/constructions.hpp"

#include <charconv>

#include "nonholonomy/errors.hpp"
#include "nonholonomy/linalg.hpp"
#include "nonholonomy/sampling.hpp"

namespace nonholonomy {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void validate(const ExampleId& id) {
  switch (id.kind) {
    case ExampleId::Kind::Contact:
      require(id.param >= 1 && 2 * id.param + 1 <= MultiIndex::kMaxDim, "contact-M needs 1 <= M <= 31");
      break;
    case ExampleId::Kind::EvenContact:
      require(id.param >= 4 && id.param % 2 == 0 && id.param <= MultiIndex::kMaxDim,
              "even-contact-N needs an even N with 4 <= N <= 64");
      break;
    case ExampleId::Kind::JetCanonical:
      require(id.param >= 1 && 2 * id.param + 1 <= MultiIndex::kMaxDim, "jet-canonical-K needs 1 <= K <= 31");
      break;
    case ExampleId::Kind::Example2R5:
      break;
    case ExampleId::Kind::PropOri:
      require(id.k >= 1 && (id.param == 4 * id.k + 1 || id.param == 4 * id.k + 2),
              "prop-ori needs k >= 1 and n in {4k+1, 4k+2}");
      require(id.param <= MultiIndex::kMaxDim, "prop-ori dimension exceeds 64");
      break;
  }
}

std::size_t parse_count(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("unknown example '" + std::string(whole) + "'");
  }
  return value;
}

bool consume(std::string_view& text, std::string_view prefix) {
  if (!text.starts_with(prefix)) return false;
  text.remove_prefix(prefix.size());
  return true;
}

Polynomial var(const Chart& c, std::size_t i) { return Polynomial::variable(c, i); }
DiffForm dx(const Chart& c, std::size_t i) { return DiffForm::differential(c, i); }
VectorField del(const Chart& c, std::size_t i) { return VectorField::coordinate(c, i); }

// Chart (z, x1, y1, ..., xm, ym[, w]) with alpha = dz - sum y_i dx_i.
Distribution contact_like(std::size_t m, bool extra_w) {
  std::vector<std::string> names{"z"};
  for (std::size_t i = 1; i <= m; ++i) {
    names.push_back("x" + std::to_string(i));
    names.push_back("y" + std::to_string(i));
  }
  if (extra_w) names.push_back("w");
  const Chart chart(std::move(names));

  DiffForm alpha = dx(chart, 0);
  std::vector<VectorField> frame;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t x = 1 + 2 * i;
    const std::size_t y = x + 1;
    alpha -= var(chart, y) * dx(chart, x);
    frame.push_back(del(chart, x) + var(chart, y) * del(chart, 0));
    frame.push_back(del(chart, y));
  }
  if (extra_w) frame.push_back(del(chart, chart.dim() - 1));
  return Distribution::from_both(chart, std::move(frame), {alpha});
}

Distribution jet_canonical(std::size_t k) {
  std::vector<std::string> names{"x"};
  for (std::size_t j = 1; j <= k; ++j) names.push_back("y" + std::to_string(j));
  for (std::size_t j = 1; j <= k; ++j) names.push_back("z" + std::to_string(j));
  const Chart chart(std::move(names));

  std::vector<DiffForm> coframe;
  VectorField total = del(chart, 0);
  std::vector<VectorField> frame;
  for (std::size_t j = 1; j <= k; ++j) {
    coframe.push_back(dx(chart, j) - var(chart, k + j) * dx(chart, 0));
    total += var(chart, k + j) * del(chart, j);
  }
  frame.push_back(total);
  for (std::size_t j = 1; j <= k; ++j) frame.push_back(del(chart, k + j));
  return Distribution::from_both(chart, std::move(frame), std::move(coframe));
}

Distribution example2_r5() {
  const Chart chart({"x1", "x2", "y", "z1", "z2"});
  DiffForm alpha = dx(chart, 2) - var(chart, 3) * dx(chart, 0);
  std::vector<VectorField> frame{del(chart, 0) + var(chart, 3) * del(chart, 2), del(chart, 1), del(chart, 3),
                                 del(chart, 4)};
  return Distribution::from_both(chart, std::move(frame), {alpha});
}

std::optional<std::size_t> odd_rank_k(std::size_t rank, std::size_t n) {
  const auto bound = mni_dimension_bound(rank, n);
  return bound.holds ? bound.k : std::nullopt;
}

// Coordinate covectors that complete a constant coframe to a basis, in chart order.
std::vector<DiffForm> pad_to_basis(const Chart& chart, std::span<const DiffForm> coframe) {
  const Point origin(chart.dim(), Scalar(0));
  for (const auto& a : coframe) {
    require(a.degree() == 1 && a.chart() == chart, "coframe must consist of 1-forms on the example chart");
    for (const auto& [index, f] : a.terms()) require(f.is_constant(), "prop-ori coframe must have constant coefficients");
  }
  std::vector<std::vector<Scalar>> rows;
  for (const auto& a : coframe) {
    std::vector<Scalar> row(chart.dim(), Scalar(0));
    for (const auto& [index, c] : evaluate_at_point(a, origin).terms) row[index.indices().front()] = c;
    rows.push_back(std::move(row));
  }
  require(rank(RationalMatrix::from_rows(rows)) == coframe.size() || coframe.empty(), "prop-ori coframe is dependent");

  std::vector<DiffForm> padding;
  std::size_t current = coframe.size();
  for (std::size_t j = 0; j < chart.dim() && current < chart.dim(); ++j) {
    std::vector<Scalar> e(chart.dim(), Scalar(0));
    e[j] = 1;
    rows.push_back(e);
    if (rank(RationalMatrix::from_rows(rows)) > current) {
      ++current;
      padding.push_back(dx(chart, j));
    } else {
      rows.pop_back();
    }
  }
  return padding;
}

Scalar factorial(std::size_t k) {
  Scalar out = 1;
  for (std::size_t j = 2; j <= k; ++j) out *= static_cast<unsigned long>(j);
  return out;
}

}  // namespace

ExampleId ExampleId::contact(std::size_t m) {
  ExampleId id{Kind::Contact, m, 0, {}};
  validate(id);
  return id;
}

ExampleId ExampleId::even_contact(std::size_t n) {
  ExampleId id{Kind::EvenContact, n, 0, {}};
  validate(id);
  return id;
}

ExampleId ExampleId::jet_canonical(std::size_t k) {
  ExampleId id{Kind::JetCanonical, k, 0, {}};
  validate(id);
  return id;
}

ExampleId ExampleId::example2_r5() { return ExampleId{Kind::Example2R5, 5, 0, {}}; }

ExampleId ExampleId::prop_ori(std::size_t n, std::size_t k, std::optional<std::vector<DiffForm>> coframe) {
  ExampleId id{Kind::PropOri, n, k, std::move(coframe)};
  validate(id);
  return id;
}

ExampleId ExampleId::parse(std::string_view name) {
  std::string_view rest = name;
  if (name == "example2-r5") return example2_r5();
  if (consume(rest, "contact-")) return contact(parse_count(rest, name));
  if (consume(rest, "even-contact-")) return even_contact(parse_count(rest, name));
  if (consume(rest, "jet-canonical-")) return jet_canonical(parse_count(rest, name));
  if (consume(rest, "prop-ori-n")) {
    const auto dash = rest.find("-k");
    if (dash == std::string_view::npos) throw InputError("unknown example '" + std::string(name) + "'");
    return prop_ori(parse_count(rest.substr(0, dash), name), parse_count(rest.substr(dash + 2), name));
  }
  throw InputError("unknown example '" + std::string(name) + "'");
}

std::string ExampleId::name() const {
  switch (kind) {
    case Kind::Contact:
      return "contact-" + std::to_string(param);
    case Kind::EvenContact:
      return "even-contact-" + std::to_string(param);
    case Kind::JetCanonical:
      return "jet-canonical-" + std::to_string(param);
    case Kind::Example2R5:
      return "example2-r5";
    case Kind::PropOri:
      return "prop-ori-n" + std::to_string(param) + "-k" + std::to_string(k);
  }
  return {};
}

BuiltExample build_example(const ExampleId& id) {
  validate(id);
  switch (id.kind) {
    case ExampleId::Kind::Contact:
      return {id.name(), contact_like(id.param, false), {}, {}, {}, true};
    case ExampleId::Kind::EvenContact: {
      auto d = contact_like((id.param - 2) / 2, true);
      const auto k = odd_rank_k(d.rank(), d.chart().dim());
      return {id.name(), std::move(d), {}, {}, k, true};
    }
    case ExampleId::Kind::JetCanonical: {
      auto d = jet_canonical(id.param);
      const auto k = odd_rank_k(d.rank(), d.chart().dim());
      return {id.name(), std::move(d), {}, {}, k, true};
    }
    case ExampleId::Kind::Example2R5:
      return {id.name(), example2_r5(), {}, {}, {}, true};
    case ExampleId::Kind::PropOri: {
      const std::size_t n = id.param;
      const std::size_t m = n - 2 * id.k - 1;
      const Chart chart = id.coframe && !id.coframe->empty() ? id.coframe->front().chart() : Chart::numbered("x", n);
      require(chart.dim() == n, "prop-ori coframe lives on a chart of the wrong dimension");

      std::vector<DiffForm> coframe;
      std::optional<std::vector<VectorField>> frame;
      if (id.coframe) {
        coframe = *id.coframe;
      } else {
        frame.emplace();
        for (std::size_t j = 0; j < 2 * id.k + 1; ++j) frame->push_back(del(chart, j));
        for (std::size_t j = 2 * id.k + 1; j < n; ++j) coframe.push_back(dx(chart, j));
      }
      require(coframe.size() == m, "prop-ori coframe needs n - 2k - 1 forms");
      auto dual = pad_to_basis(chart, coframe);
      auto omegas = build_prop_ori_omegas(dual);
      omegas.erase(omegas.begin() + static_cast<std::ptrdiff_t>(m), omegas.end());
      auto d = frame ? Distribution::from_both(chart, std::move(*frame), std::move(coframe))
                     : Distribution::from_coframe(chart, std::move(coframe));
      return {id.name(), std::move(d), std::move(dual), std::move(omegas), id.k, false};
    }
  }
  throw InputError("unknown example kind");
}

std::vector<DiffForm> build_prop_ori_omegas(std::span<const DiffForm> coframe) {
  require(coframe.size() % 2 == 1 && coframe.size() >= 3, "prop-ori needs 2k+1 covectors with k >= 1");
  const Chart& chart = coframe.front().chart();
  for (const auto& a : coframe) {
    require(a.degree() == 1, "prop-ori coframe must consist of 1-forms");
    require(a.chart() == chart, "prop-ori coframe mixes charts");
  }
  if (!constant_minor_certificate(coframe)) {
    for (const auto& pt : default_samples(chart.dim())) {
      if (!independent_at_point(coframe, pt)) {
        throw InputError("prop-ori coframe is dependent at " + to_string(std::span<const Scalar>(pt)));
      }
    }
  }

  std::vector<DiffForm> omegas;
  for (std::size_t i = 0; i < coframe.size(); ++i) {
    std::vector<std::size_t> p;
    for (std::size_t j = 0; j < coframe.size(); ++j) {
      if (j != i) p.push_back(j);
    }
    DiffForm w(chart, 2);
    for (std::size_t j = 0; j < p.size(); j += 2) w += wedge(coframe[p[j]], coframe[p[j + 1]]);
    omegas.push_back(std::move(w));
  }
  return omegas;
}

PropOriIdentity verify_prop_ori_identity(std::span<const DiffForm> coframe, std::size_t k) {
  require(coframe.size() == 2 * k + 1, "expected 2k+1 covectors");
  const auto omegas = build_prop_ori_omegas(coframe);
  const Chart& chart = coframe.front().chart();

  PropOriIdentity out;
  out.magnitude = factorial(k);
  out.holds = true;
  for (std::size_t i = 0; i < coframe.size(); ++i) {
    std::vector<DiffForm> rest;
    for (std::size_t j = 0; j < coframe.size(); ++j) {
      if (j != i) rest.push_back(coframe[j]);
    }
    const DiffForm omitted = out.magnitude * wedge_all(chart, rest);
    const DiffForm power = wedge_power(omegas[i], k);
    int sign = 0;
    if (!omitted.is_zero() && power == omitted) {
      sign = 1;
    } else if (!omitted.is_zero() && power == -omitted) {
      sign = -1;
    }
    out.holds = out.holds && sign != 0;
    out.signs.push_back(sign);
  }
  return out;
}

std::vector<ExampleId> builtin_corpus() {
  return {ExampleId::contact(1),       ExampleId::contact(2),       ExampleId::contact(3),
          ExampleId::even_contact(4),  ExampleId::even_contact(6),  ExampleId::jet_canonical(1),
          ExampleId::jet_canonical(2), ExampleId::jet_canonical(3), ExampleId::jet_canonical(4),
          ExampleId::example2_r5(),    ExampleId::prop_ori(5, 1),   ExampleId::prop_ori(6, 1)};
}

}  // namespace nonholonomy
