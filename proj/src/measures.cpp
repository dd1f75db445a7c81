#include "sadic/measures.hpp"

#include "sadic/errors.hpp"
#include "sadic/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sadic {

Box MeasureCone::box() const {
  Box b;
  for (Eigen::Index i = 0; i < columns.rows(); ++i) {
    Rational lo = columns(i, 0), hi = columns(i, 0);
    for (Eigen::Index j = 1; j < columns.cols(); ++j) {
      lo = std::min(lo, columns(i, j));
      hi = std::max(hi, columns(i, j));
    }
    b.emplace_back(lo, hi);
  }
  return b;
}

Rational l1_norm(const RationalVector& v) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += abs(v(i));
  return s;
}

Rational l1_distance(const RationalVector& a, const RationalVector& b) { return l1_norm(a - b); }

MeasureCone cone_of(const IntegerMatrix& product, std::size_t depth) {
  MeasureCone cone;
  cone.depth = depth;
  cone.columns.resize(product.rows(), product.cols());
  for (Eigen::Index j = 0; j < product.cols(); ++j) {
    const Integer norm = product.col(j).sum();
    if (norm <= 0) throw PreconditionError("a telescoped column is zero");
    for (Eigen::Index i = 0; i < product.rows(); ++i) cone.columns(i, j) = Rational(product(i, j), norm);
  }
  cone.diameter = 0;
  for (Eigen::Index j = 0; j < product.cols(); ++j)
    for (Eigen::Index k = j + 1; k < product.cols(); ++k)
      cone.diameter = std::max(cone.diameter, l1_distance(cone.columns.col(j), cone.columns.col(k)));
  return cone;
}

namespace {

void require_primitive(const DirectiveSequence& ds, const char* what) {
  if (certify(ds, 1).primitive.verdict != Verdict::yes)
    throw PreconditionError(std::string(what) + " needs a sequence certified primitive");
}

}  // namespace

MeasureCone cone_at(const DirectiveSequence& ds, std::size_t n) {
  require_primitive(ds, "cone_at");
  const auto d = static_cast<Eigen::Index>(ds.dimension());
  if (n == 0) return cone_of(IntegerMatrix::Identity(d, d), 0);
  return cone_of(telescope_matrix(ds, 1, n + 1), n);
}

RationalMatrix nesting_coefficients(const DirectiveSequence& ds, std::size_t n) {
  const auto d = static_cast<Eigen::Index>(ds.dimension());
  const IntegerMatrix before = n == 0 ? IntegerMatrix(IntegerMatrix::Identity(d, d)) : telescope_matrix(ds, 1, n + 1);
  const IntegerMatrix step = ds.matrix_at(n + 1);
  const IntegerMatrix after = before * step;
  RationalMatrix k(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) k(i, j) = Rational(step(i, j) * before.col(i).sum(), after.col(j).sum());
  return k;
}

ConeSweep::ConeSweep(const DirectiveSequence& ds) : ds_(&ds) {
  const auto d = static_cast<Eigen::Index>(ds.dimension());
  product_ = IntegerMatrix::Identity(d, d);
  cone_ = cone_of(product_, 0);
}

void ConeSweep::advance() {
  product_ = product_ * ds_->matrix_at(cone_.depth + 1);
  cone_ = cone_of(product_, cone_.depth + 1);
}

std::string to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::unique: return "unique";
    case ProbeKind::multiple: return "multiple";
    case ProbeKind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct Clustering {
  std::vector<std::vector<std::size_t>> groups;  // ordered by smallest member
  std::optional<Rational> gap;                   // min distance across groups
};

Clustering single_linkage(const MeasureCone& cone, const Rational& threshold) {
  const std::size_t d = cone.dimension();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::vector<std::vector<Rational>> dist(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      dist[i][j] = dist[j][i] = l1_distance(cone.column(i), cone.column(j));
      if (dist[i][j] <= threshold) parent[find(i)] = find(j);
    }
  Clustering c;
  std::vector<long> slot(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(c.groups.size());
      c.groups.emplace_back();
    }
    c.groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (find(i) != find(j) && (!c.gap || dist[i][j] < *c.gap)) c.gap = dist[i][j];
  return c;
}

Box group_box(const MeasureCone& cone, const std::vector<std::size_t>& group) {
  Box b;
  for (std::size_t i = 0; i < cone.dimension(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    Rational lo = cone.columns(row, static_cast<Eigen::Index>(group.front())), hi = lo;
    for (std::size_t j : group) {
      lo = std::min(lo, cone.columns(row, static_cast<Eigen::Index>(j)));
      hi = std::max(hi, cone.columns(row, static_cast<Eigen::Index>(j)));
    }
    b.emplace_back(lo, hi);
  }
  return b;
}

}  // namespace

ProbeReport ergodicity_probe(const DirectiveSequence& ds, std::size_t max_depth, const Rational& eps) {
  if (max_depth < 3) throw InputError("ergodicity_probe needs max_depth >= 3");
  if (eps <= 0) throw InputError("ergodicity_probe needs eps > 0");
  require_primitive(ds, "ergodicity_probe");
  ProbeReport report;
  report.eps = eps;
  std::size_t depth_limit = max_depth;
  if (auto h = ds.horizon(); h && *h < depth_limit) {
    depth_limit = *h;
    report.truncated = true;
  }
  const std::size_t d = ds.dimension();
  const std::size_t quarter_start = depth_limit - std::max<std::size_t>(1, depth_limit / 4);

  ConeSweep sweep(ds);
  report.diameters.push_back(sweep.cone().diameter);
  std::optional<std::size_t> persistent_count;
  bool persistent = true;
  Clustering last;
  for (std::size_t n = 1; n <= depth_limit; ++n) {
    sweep.advance();
    const auto& cone = sweep.cone();
    report.diameters.push_back(cone.diameter);
    if (cone.diameter < eps) {
      report.kind = ProbeKind::unique;
      report.depth = n;
      report.enclosure = cone.box();
      return report;
    }
    if (n >= quarter_start) {
      last = single_linkage(cone, 2 * eps);
      const std::size_t k = last.groups.size();
      const bool separated = last.gap && *last.gap > 4 * eps;
      if (k < 2 || !separated || (persistent_count && *persistent_count != k)) persistent = false;
      persistent_count = k;
    }
  }
  const auto& cone = sweep.cone();
  report.depth = depth_limit;
  report.enclosure = cone.box();
  if (persistent && persistent_count && *persistent_count >= 2) {
    if (*persistent_count > d - 1) {
      report.note = std::to_string(*persistent_count) + " column clusters exceed the bound d - 1; not reported";
      return report;
    }
    report.kind = ProbeKind::multiple;
    for (const auto& g : last.groups) report.clusters.push_back(group_box(cone, g));
    report.cluster_gap = last.gap;
    report.note = "clusters are limit points of normalized columns; they are not certified to be the ergodic letter vectors";
    return report;
  }
  report.note = "cone diameter stayed above eps and no persistent clusters were found";
  return report;
}

Box letter_measure_enclosure(const DirectiveSequence& ds, std::size_t max_depth, const Rational& eps) {
  const auto report = ergodicity_probe(ds, max_depth, eps);
  if (report.kind != ProbeKind::unique)
    throw InconclusiveError("letter_measure_enclosure: probe verdict is " + to_string(report.kind));
  return report.enclosure;
}

// ---------------------------------------------------------------- exact frequencies

namespace {

Integer eval(const std::vector<Integer>& poly, const Integer& x) {
  Integer v = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

// Divides a monic integer polynomial by (x - r).
std::vector<Integer> deflate(const std::vector<Integer>& poly, const Integer& r) {
  const std::size_t n = poly.size() - 1;
  std::vector<Integer> q(n);
  Integer carry = 0;
  for (std::size_t k = n; k-- > 0;) {
    carry = poly[k + 1] + carry * r;
    q[k] = carry;
  }
  return q;
}

double perron_estimate(const IntegerMatrix& m) {
  const auto d = m.rows();
  std::vector<long double> v(static_cast<std::size_t>(d), 1.0L), w(static_cast<std::size_t>(d));
  long double lambda = 0;
  for (int it = 0; it < 5000; ++it) {
    long double s = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      long double acc = 0;
      for (Eigen::Index j = 0; j < d; ++j) acc += m(i, j).convert_to<long double>() * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = acc;
      s += acc;
    }
    lambda = s;  // v sums to 1
    for (auto& x : w) x /= s;
    v = w;
  }
  return static_cast<double>(lambda);
}

std::optional<QuadraticVector> normalized_positive(const Matrix<QuadraticNumber>& kernel) {
  if (kernel.cols() != 1) return std::nullopt;
  QuadraticNumber sum = 0;
  for (Eigen::Index i = 0; i < kernel.rows(); ++i) sum += kernel(i, 0);
  if (sum == QuadraticNumber(0)) return std::nullopt;
  QuadraticVector v;
  for (Eigen::Index i = 0; i < kernel.rows(); ++i) v.push_back(kernel(i, 0) / sum);
  for (const auto& x : v)
    if (x.sign() <= 0) return std::nullopt;
  return v;
}

}  // namespace

std::optional<QuadraticVector> exact_letter_measure(const DirectiveSequence& ds) {
  if (ds.is_generated()) return std::nullopt;
  require_primitive(ds, "exact_letter_measure");
  const auto d = static_cast<Eigen::Index>(ds.dimension());
  IntegerMatrix head = IntegerMatrix::Identity(d, d);
  for (const auto& m : ds.prefix()) head = head * incidence_matrix(m);
  IntegerMatrix period = IntegerMatrix::Identity(d, d);
  for (const auto& m : ds.period()) period = period * incidence_matrix(m);

  auto poly = characteristic_polynomial(period);
  const double estimate = perron_estimate(period);
  QuadraticNumber lambda;
  bool found = false;
  // Integer roots first (the polynomial is monic, so rational roots are integers).
  const Integer rounded(static_cast<long long>(std::llround(estimate)));
  if (eval(poly, rounded) == 0) {
    lambda = QuadraticNumber(Rational(rounded));
    found = true;
  } else {
    Integer bound = 1;
    for (const auto& c : poly) bound = std::max(bound, abs(c) + 1);
    for (Integer r = -bound; r <= bound && poly.size() > 3; ++r) {
      while (poly.size() > 3 && eval(poly, r) == 0) poly = deflate(poly, r);
    }
    if (poly.size() == 3) {
      // x^2 + b x + c.
      const Integer b = poly[1], c = poly[0];
      const Integer disc = b * b - 4 * c;
      if (disc > 0) {
        for (int s : {1, -1}) {
          QuadraticNumber root(Rational(-b, 2), Rational(s, 2), disc);
          if (std::abs(root.to_double() - estimate) < 1e-6 * std::max(1.0, estimate)) {
            lambda = root;
            found = true;
            break;
          }
        }
      }
    }
  }
  if (!found) return std::nullopt;

  Matrix<QuadraticNumber> a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = QuadraticNumber(Rational(period(i, j))) - (i == j ? lambda : QuadraticNumber(0));
  auto v = normalized_positive(kernel_basis(a));
  if (!v) return std::nullopt;
  Matrix<QuadraticNumber> column(d, 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    QuadraticNumber acc = 0;
    for (Eigen::Index j = 0; j < d; ++j) acc += QuadraticNumber(Rational(head(i, j))) * (*v)[static_cast<std::size_t>(j)];
    column(i, 0) = acc;
  }
  return normalized_positive(column);
}

Box enclose(const QuadraticVector& v, const Rational& width) {
  Box b;
  for (const auto& x : v) b.push_back(x.enclose(width));
  return b;
}

// ---------------------------------------------------------------- JSON

nlohmann::json rational_json(const Rational& r) { return {{"exact", to_fraction_string(r)}, {"decimal", to_decimal_string(r, 15)}}; }

nlohmann::json interval_json(const Interval& i) { return {{"lo", rational_json(i.lo)}, {"hi", rational_json(i.hi)}}; }

nlohmann::json box_json(const Box& b) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& i : b) arr.push_back(interval_json(i));
  return arr;
}

nlohmann::json to_json(const ProbeReport& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.kind);
  j["depth"] = r.depth;
  j["eps"] = rational_json(r.eps);
  j["enclosure"] = box_json(r.enclosure);
  if (r.kind == ProbeKind::multiple) {
    j["clusters"] = nlohmann::json::array();
    for (const auto& c : r.clusters) j["clusters"].push_back(box_json(c));
    j["cluster_gap"] = rational_json(*r.cluster_gap);
  }
  nlohmann::json diam = nlohmann::json::array();
  for (const auto& x : r.diameters) diam.push_back(to_decimal_string(x, 15));
  j["diameters"] = diam;
  j["truncated"] = r.truncated;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace sadic
