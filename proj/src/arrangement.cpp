#include "cgh/arrangement.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cgh/errors.hpp"
#include "layered_builder.hpp"

namespace cgh {

Index rref_in_place(RationalMatrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i) {
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    const Rational lead = m(r, c);
    m.row(r) /= lead;
    for (Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rational f = m(i, c);
      if (f != 0) m.row(i) -= f * m.row(r);
    }
    ++r;
  }
  return r;
}

namespace {

// Canonicalizes a constraint system [A | b]: RREF, zero rows dropped.
// Returns false when the system is inconsistent.
bool canonicalize_system(RationalMatrix& sys) {
  const Index rank = rref_in_place(sys);
  for (Index i = 0; i < rank; ++i) {
    bool coeffs_zero = true;
    for (Index c = 0; c + 1 < sys.cols(); ++c)
      if (sys(i, c) != 0) {
        coeffs_zero = false;
        break;
      }
    if (coeffs_zero && sys(i, sys.cols() - 1) != 0) return false;
  }
  sys.conservativeResize(rank, sys.cols());
  return true;
}

}  // namespace

AffinePlane::AffinePlane(int ambient, RationalMatrix canonical, raw_tag)
    : ambient_(ambient), system_(std::move(canonical)) {}

AffinePlane::AffinePlane(const RationalMatrix& a, const RationalVector& b) {
  if (a.rows() == 0 || a.cols() == 0)
    throw std::invalid_argument("AffinePlane: empty constraint system");
  if (a.rows() != b.rows())
    throw std::invalid_argument("AffinePlane: A has " +
                                std::to_string(a.rows()) + " rows but b has " +
                                std::to_string(b.rows()));
  ambient_ = static_cast<int>(a.cols());
  RationalMatrix sys(a.rows(), a.cols() + 1);
  sys.leftCols(a.cols()) = a;
  sys.col(a.cols()) = b;
  if (!canonicalize_system(sys))
    throw std::invalid_argument("AffinePlane: constraints are inconsistent");
  if (sys.rows() == 0)
    throw std::invalid_argument(
        "AffinePlane: constraints define the whole space");
  system_ = std::move(sys);
}

bool AffinePlane::subset_of(const AffinePlane& other) const {
  if (ambient_ != other.ambient_) return false;
  RationalMatrix stacked(system_.rows() + other.system_.rows(),
                         ambient_ + 1);
  stacked.topRows(system_.rows()) = system_;
  stacked.bottomRows(other.system_.rows()) = other.system_;
  return rref_in_place(stacked) == system_.rows();
}

std::optional<AffinePlane> AffinePlane::intersect(
    const AffinePlane& other) const {
  if (ambient_ != other.ambient_)
    throw std::invalid_argument("AffinePlane: mixed ambient dimensions");
  RationalMatrix stacked(system_.rows() + other.system_.rows(),
                         ambient_ + 1);
  stacked.topRows(system_.rows()) = system_;
  stacked.bottomRows(other.system_.rows()) = other.system_;
  if (!canonicalize_system(stacked)) return std::nullopt;
  return AffinePlane(ambient_, std::move(stacked), raw_tag{});
}

bool AffinePlane::operator==(const AffinePlane& other) const {
  if (ambient_ != other.ambient_ || system_.rows() != other.system_.rows())
    return false;
  for (Index i = 0; i < system_.rows(); ++i)
    for (Index j = 0; j < system_.cols(); ++j)
      if (system_(i, j) != other.system_(i, j)) return false;
  return true;
}

bool AffinePlane::operator<(const AffinePlane& other) const {
  if (ambient_ != other.ambient_) return ambient_ < other.ambient_;
  if (system_.rows() != other.system_.rows())
    return system_.rows() < other.system_.rows();
  for (Index i = 0; i < system_.rows(); ++i)
    for (Index j = 0; j < system_.cols(); ++j) {
      if (system_(i, j) != other.system_(i, j))
        return system_(i, j) < other.system_(i, j);
    }
  return false;
}

std::vector<Flat> intersection_poset(const std::vector<AffinePlane>& planes,
                                     const ArrangementLimits& limits) {
  if (planes.empty()) return {};
  const int n = planes[0].ambient_dim();
  for (const AffinePlane& p : planes)
    if (p.ambient_dim() != n)
      throw std::invalid_argument(
          "intersection_poset: mixed ambient dimensions");
  if (static_cast<int>(planes.size()) > limits.max_planes)
    throw ResourceLimitError("intersection_poset: " +
                             std::to_string(planes.size()) +
                             " planes exceed the configured maximum of " +
                             std::to_string(limits.max_planes));

  std::set<AffinePlane> seen;
  std::vector<AffinePlane> flats;
  auto add = [&](const AffinePlane& f) {
    if (seen.insert(f).second) {
      flats.push_back(f);
      if (static_cast<Index>(flats.size()) > limits.max_flats)
        throw ResourceLimitError(
            "intersection_poset: more than " +
            std::to_string(limits.max_flats) + " flats");
    }
  };
  for (const AffinePlane& p : planes) add(p);
  for (std::size_t i = 0; i < flats.size(); ++i) {
    const AffinePlane f = flats[i];  // copy: flats may reallocate
    for (const AffinePlane& p : planes) {
      if (const auto g = f.intersect(p)) add(*g);
    }
  }

  std::sort(flats.begin(), flats.end(),
            [](const AffinePlane& a, const AffinePlane& b) {
              if (a.dim() != b.dim()) return a.dim() > b.dim();
              return a < b;
            });
  std::vector<Flat> out;
  out.reserve(flats.size());
  for (AffinePlane& f : flats) {
    Flat entry{std::move(f), {}};
    for (std::size_t j = 0; j < planes.size(); ++j)
      if (entry.plane.subset_of(planes[j]))
        entry.j_prime.push_back(static_cast<int>(j) + 1);
    out.push_back(std::move(entry));
  }
  return out;
}

ChainComplex flat_complex(const Flat& flat,
                          const std::vector<AffinePlane>& planes,
                          const ArrangementLimits& limits) {
  const int target_codim = flat.plane.codim();
  const int n = flat.plane.ambient_dim();
  Index total_rows = 0;
  for (int j : flat.j_prime) {
    if (j < 1 || j > static_cast<int>(planes.size()))
      throw std::invalid_argument("flat_complex: plane index " +
                                  std::to_string(j) + " out of range");
    total_rows += planes[static_cast<std::size_t>(j - 1)].system().rows();
  }

  detail::LayeredSpec spec;
  spec.name = "K(L";
  for (std::size_t i = 0; i < flat.j_prime.size(); ++i)
    spec.name += (i ? "," : "{") + std::to_string(flat.j_prime[i]);
  spec.name += "})";
  spec.universe_size = static_cast<int>(flat.j_prime.size());
  spec.honest = false;
  spec.layer_budget = limits.layer_budget;
  for (int j : flat.j_prime) spec.generator_names.push_back("P" + std::to_string(j));

  std::vector<const AffinePlane*> members;
  for (int j : flat.j_prime)
    members.push_back(&planes[static_cast<std::size_t>(j - 1)]);
  spec.keep = [members, target_codim, n,
               total_rows](std::uint64_t face) -> bool {
    RationalMatrix stacked(total_rows, n + 1);
    Index r = 0;
    std::uint64_t rest = face;
    for (int g = 0; rest; ++g, rest >>= 1) {
      if (!(rest & 1)) continue;
      const RationalMatrix& sys = members[static_cast<std::size_t>(g)]->system();
      stacked.middleRows(r, sys.rows()) = sys;
      r += sys.rows();
    }
    stacked.conservativeResize(r, n + 1);
    // Members all contain the flat, so the system is consistent and the
    // rank is exactly the codimension of the intersection.
    return rref_in_place(stacked) == target_codim;
  };
  return detail::build_layered(std::move(spec));
}

GMTable assemble_gm(const std::vector<AffinePlane>& planes,
                    const HomologyOptions& options,
                    const ArrangementLimits& limits) {
  GMTable table;
  if (planes.empty()) {
    table.complement_betti = {1};
    return table;
  }
  const int n = planes[0].ambient_dim();
  table.ambient_dim = n;

  std::vector<Flat> flats = intersection_poset(planes, limits);
  std::vector<Index> reduced(static_cast<std::size_t>(n), 0);
  for (Flat& flat : flats) {
    const ChainComplex cx = flat_complex(flat, planes, limits);
    HomologySummary summary = homology(cx, options);
    // A flat of dimension d contributes its degree (n - i - 1 - d) homology
    // to the complement's reduced degree i.
    for (int i = 0; i < n; ++i) {
      const int source = n - i - 1 - flat.plane.dim();
      if (source >= 0 && source < static_cast<int>(summary.dims.size()))
        reduced[static_cast<std::size_t>(i)] +=
            summary.dims[static_cast<std::size_t>(source)].betti;
    }
    table.flats.push_back(FlatEntry{std::move(flat), std::move(summary)});
  }

  table.complement_betti.assign(reduced.begin(), reduced.end());
  if (table.complement_betti.empty()) table.complement_betti.push_back(0);
  table.complement_betti[0] += 1;  // back from reduced to honest Betti
  while (table.complement_betti.size() > 1 && table.complement_betti.back() == 0)
    table.complement_betti.pop_back();
  return table;
}

std::vector<AffinePlane> braid_arrangement(int k, const BraidLimits& limits) {
  if (k < 2)
    throw std::invalid_argument("braid_arrangement: k must be at least 2");
  if (k > limits.max_k)
    throw ResourceLimitError("braid_arrangement: k = " + std::to_string(k) +
                             " exceeds the configured maximum of " +
                             std::to_string(limits.max_k));
  std::vector<AffinePlane> out;
  const int n = 2 * k;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      RationalMatrix a = RationalMatrix::Zero(2, n);
      RationalVector b = RationalVector::Zero(2);
      a(0, 2 * (i - 1)) = 1;
      a(0, 2 * (j - 1)) = -1;
      a(1, 2 * (i - 1) + 1) = 1;
      a(1, 2 * (j - 1) + 1) = -1;
      out.emplace_back(a, b);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Chamber counting: enumerate sign patterns and decide each system of
// strict inequalities by Fourier-Motzkin elimination over the rationals.
// ---------------------------------------------------------------------------

namespace {

// One strict inequality c . x + d > 0, stored as the row (c_0..c_{n-1}, d).
using StrictRow = std::vector<Rational>;

void normalize_row(StrictRow& row) {
  for (const Rational& v : row) {
    if (v != 0) {
      const Rational lead = v;
      for (Rational& w : row) w /= lead < 0 ? -lead : lead;
      return;
    }
  }
}

bool feasible_strict(std::vector<StrictRow> rows, int vars) {
  for (int v = vars - 1; v >= 0; --v) {
    std::vector<StrictRow> zero, pos, neg;
    for (StrictRow& row : rows) {
      if (row[static_cast<std::size_t>(v)] > 0)
        pos.push_back(std::move(row));
      else if (row[static_cast<std::size_t>(v)] < 0)
        neg.push_back(std::move(row));
      else
        zero.push_back(std::move(row));
    }
    std::set<StrictRow> next(zero.begin(), zero.end());
    for (const StrictRow& p : pos)
      for (const StrictRow& q : neg) {
        // p: a x_v + P > 0 (a > 0), q: -b x_v + Q > 0 (b > 0)
        // combine to b P + a Q > 0.
        const Rational a = p[static_cast<std::size_t>(v)];
        const Rational b = -q[static_cast<std::size_t>(v)];
        StrictRow combo(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
          combo[i] = b * p[i] + a * q[i];
        combo[static_cast<std::size_t>(v)] = 0;
        normalize_row(combo);
        next.insert(std::move(combo));
      }
    rows.assign(next.begin(), next.end());
    // Constant rows decide feasibility immediately.
    std::vector<StrictRow> keep;
    for (StrictRow& row : rows) {
      bool constant = true;
      for (int i = 0; i < v; ++i)
        if (row[static_cast<std::size_t>(i)] != 0) {
          constant = false;
          break;
        }
      if (constant) {
        if (row.back() <= 0) return false;
      } else {
        keep.push_back(std::move(row));
      }
    }
    rows = std::move(keep);
  }
  return true;
}

}  // namespace

Index chamber_count(const std::vector<AffinePlane>& planes,
                    const ChamberLimits& limits) {
  if (planes.empty())
    throw std::invalid_argument("chamber_count: no planes given");
  const int n = planes[0].ambient_dim();
  for (const AffinePlane& p : planes) {
    if (p.ambient_dim() != n)
      throw std::invalid_argument("chamber_count: mixed ambient dimensions");
    if (p.codim() != 1)
      throw std::invalid_argument(
          "chamber_count: all planes must be hyperplanes");
  }
  if (n > limits.max_dim)
    throw ResourceLimitError("chamber_count: ambient dimension " +
                             std::to_string(n) +
                             " exceeds the configured maximum of " +
                             std::to_string(limits.max_dim));
  if (static_cast<int>(planes.size()) > limits.max_planes)
    throw ResourceLimitError("chamber_count: " +
                             std::to_string(planes.size()) +
                             " planes exceed the configured maximum of " +
                             std::to_string(limits.max_planes));

  const std::size_t s = planes.size();
  Index count = 0;
  for (std::uint32_t signs = 0; signs < (1u << s); ++signs) {
    std::vector<StrictRow> rows;
    rows.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
      const RationalMatrix& sys = planes[i].system();
      StrictRow row(static_cast<std::size_t>(n) + 1);
      // sys row is (a | b) for a . x = b; the two sides are a.x - b > 0
      // and b - a.x > 0.
      const bool positive = signs >> i & 1;
      for (int c = 0; c < n; ++c)
        row[static_cast<std::size_t>(c)] =
            positive ? sys(0, c) : -sys(0, c);
      row[static_cast<std::size_t>(n)] =
          positive ? -sys(0, n) : sys(0, n);
      rows.push_back(std::move(row));
    }
    if (feasible_strict(std::move(rows), n)) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// JSON input and output.
// ---------------------------------------------------------------------------

namespace {

Rational parse_rational(const nlohmann::json& node, const std::string& where) {
  if (node.is_number_integer())
    return Rational(node.get<std::int64_t>());
  if (node.is_string()) {
    const std::string text = node.get<std::string>();
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(Int(text));
      const Int num(text.substr(0, slash));
      const Int den(text.substr(slash + 1));
      if (den == 0)
        throw std::invalid_argument("zero denominator");
      return Rational(num, den);
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": bad rational '" + text + "' (" +
                                  e.what() + ")");
    }
  }
  throw std::invalid_argument(where +
                              ": expected an integer or a 'p/q' string");
}

}  // namespace

std::vector<AffinePlane> parse_arrangement(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("arrangement input: ") + e.what());
  }
  if (!root.is_object() || !root.contains("ambient_dim") ||
      !root.contains("planes"))
    throw std::invalid_argument(
        "arrangement input: expected {\"ambient_dim\": n, \"planes\": [..]}");
  if (!root["ambient_dim"].is_number_integer())
    throw std::invalid_argument("arrangement input: ambient_dim must be an "
                                "integer");
  const int n = root["ambient_dim"].get<int>();
  if (n < 1)
    throw std::invalid_argument("arrangement input: ambient_dim must be >= 1");
  if (!root["planes"].is_array() || root["planes"].empty())
    throw std::invalid_argument(
        "arrangement input: planes must be a nonempty array");

  std::vector<AffinePlane> out;
  for (std::size_t pi = 0; pi < root["planes"].size(); ++pi) {
    const std::string where = "planes[" + std::to_string(pi) + "]";
    const nlohmann::json& pj = root["planes"][pi];
    if (!pj.is_object() || !pj.contains("A") || !pj.contains("b"))
      throw std::invalid_argument(where + ": expected {\"A\": [..], \"b\": [..]}");
    const nlohmann::json& aj = pj["A"];
    const nlohmann::json& bj = pj["b"];
    if (!aj.is_array() || aj.empty() || !bj.is_array() ||
        bj.size() != aj.size())
      throw std::invalid_argument(where +
                                  ": A must be a nonempty row list and b "
                                  "must match its length");
    RationalMatrix a(static_cast<Index>(aj.size()), n);
    RationalVector b(static_cast<Index>(bj.size()));
    for (std::size_t r = 0; r < aj.size(); ++r) {
      if (!aj[r].is_array() || static_cast<int>(aj[r].size()) != n)
        throw std::invalid_argument(where + ".A[" + std::to_string(r) +
                                    "]: expected " + std::to_string(n) +
                                    " entries");
      for (int c = 0; c < n; ++c)
        a(static_cast<Index>(r), c) = parse_rational(
            aj[r][static_cast<std::size_t>(c)],
            where + ".A[" + std::to_string(r) + "][" + std::to_string(c) + "]");
      b(static_cast<Index>(r)) =
          parse_rational(bj[r], where + ".b[" + std::to_string(r) + "]");
    }
    try {
      out.emplace_back(a, b);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  return out;
}

std::string to_json(const GMTable& table) {
  nlohmann::ordered_json root;
  auto flats = nlohmann::ordered_json::array();
  for (const FlatEntry& entry : table.flats) {
    nlohmann::ordered_json fj;
    fj["dim"] = entry.flat.plane.dim();
    fj["J"] = entry.flat.j_prime;
    fj["betti"] = nlohmann::ordered_json::parse(to_json(entry.homology));
    flats.push_back(std::move(fj));
  }
  root["flats"] = std::move(flats);
  root["complement_betti"] = table.complement_betti;
  return root.dump();
}

}  // namespace cgh
