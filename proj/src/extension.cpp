#include "equitrans/extension.hpp"

#include "equitrans/linalg.hpp"

#include <algorithm>
#include <limits>

namespace equitrans::bundles {

namespace {

constexpr double kCollar = 0.5;
constexpr int kRetryBudget = 64;
constexpr double kFloor = 1e-8;

std::string simplex_name(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

bool is_face(const Simplex& face, const Simplex& s) { return std::includes(s.begin(), s.end(), face.begin(), face.end()); }

bool patched_within(const Section& sec, const Simplex& s) {
  return std::any_of(sec.centers.begin(), sec.centers.end(), [&](const auto& kv) { return is_face(kv.first, s); });
}

bool on_boundary(const std::vector<double>& bary) {
  return std::any_of(bary.begin(), bary.end(), [](double b) { return b <= 0.0; });
}

VecD gaussian(Eigen::Index n, sampling::Rng& rng) {
  std::normal_distribution<double> normal;
  VecD v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

void check_section_shape(const GBundle<double>& bundle, const Section& s) {
  if (static_cast<int>(s.vertex.size()) != bundle.base().vertex_count())
    throw InvalidInput("section must list every vertex of the base (possibly undefined)");
  for (std::size_t v = 0; v < s.vertex.size(); ++v)
    if (s.vertex[v] && s.vertex[v]->size() != bundle.rank())
      throw InvalidInput("section value at vertex " + std::to_string(v) + " has the wrong length");
  for (const auto& [simplex, c] : s.centers) {
    if (simplex.size() < 2 || !bundle.base().contains(simplex))
      throw InvalidInput("patch on " + simplex_name(simplex) + " is not a simplex of dimension >= 1");
    if (c.size() != bundle.rank()) throw InvalidInput("patch on " + simplex_name(simplex) + " has the wrong length");
  }
}

std::vector<VecD> values_at(const GBundle<double>& bundle, const std::vector<Section>& sections, std::size_t count,
                            const Simplex& simplex, const std::vector<double>& bary) {
  std::vector<VecD> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(evaluate(bundle, sections[j], simplex, bary));
  return out;
}

/// Smallest singular value of [T_{s_j} / scale_j]; measures vanishing and
/// dependence together.
double scaled_quality(const PureSpace& pure, const std::vector<VecD>& values, const std::vector<double>& scales) {
  const int dv = pure.dim_v();
  const auto rows = pure.basis().rows();
  const auto cols = static_cast<Eigen::Index>(values.size()) * dv;
  if (cols > rows) return 0.0;
  MatD m(rows, cols);
  for (std::size_t j = 0; j < values.size(); ++j)
    m.middleCols(static_cast<Eigen::Index>(j) * dv, dv) = pure.equivariant_map(values[j]) / scales[j];
  return linalg::min_singular_value(m);
}

}  // namespace

Section Section::undefined(int vertex_count) {
  Section s;
  s.vertex.resize(static_cast<std::size_t>(vertex_count));
  return s;
}

bool Section::defined_on(const Simplex& s) const {
  return std::all_of(s.begin(), s.end(), [&](int v) { return defined_at(v); });
}

bool Section::global() const {
  return std::all_of(vertex.begin(), vertex.end(), [](const auto& x) { return x.has_value(); });
}

VecD evaluate(const GBundle<double>& bundle, const Section& section, const Simplex& simplex, const std::vector<double>& bary) {
  if (bary.size() != simplex.size()) throw InvalidInput("barycentric coordinates do not match " + simplex_name(simplex));
  if (!section.defined_on(simplex)) throw InvalidInput("section undefined on a vertex of " + simplex_name(simplex));
  const int v0 = simplex[0];
  if (simplex.size() == 1) return *section.vertex[static_cast<std::size_t>(v0)];

  const auto at = [&](std::size_t i) -> VecD {
    return bundle.transition(simplex[i], v0) * *section.vertex[static_cast<std::size_t>(simplex[i])];
  };
  if (!patched_within(section, simplex)) {
    VecD out = VecD::Zero(bundle.rank());
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (bary[i] != 0.0) out += bary[i] * at(i);
    return out;
  }

  VecD center;
  if (const auto it = section.centers.find(simplex); it != section.centers.end()) {
    center = it->second;
  } else {
    center = VecD::Zero(bundle.rank());
    for (std::size_t i = 0; i < simplex.size(); ++i) center += at(i);
    center /= static_cast<double>(simplex.size());
  }

  const double k = static_cast<double>(simplex.size());
  const double b = 1.0 / k;
  const double r = 1.0 - k * *std::min_element(bary.begin(), bary.end());
  if (r <= 1e-12) return center;

  Simplex face;
  std::vector<double> y;
  double total = 0.0;
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    const double yi = b + (bary[i] - b) / r;
    if (yi > 1e-12) {
      face.push_back(simplex[i]);
      y.push_back(yi);
      total += yi;
    }
  }
  for (double& yi : y) yi /= total;
  const VecD outer = bundle.transition(face[0], v0) * evaluate(bundle, section, face, y);
  if (r >= kCollar) return outer;
  const double t = r / kCollar;
  return t * outer + (1.0 - t) * center;
}

PureSpace::PureSpace(const GBundle<double>& bundle, const std::string& label)
    : irrep_(reps::irrep_by_label<double>(bundle.group(), label)) {
  projector_ = label == "trivial" ? reps::fixed_projector(bundle.fiber()) : reps::isotypic_projector(bundle.fiber(), irrep_);
  copies_ = static_cast<int>(std::lround(projector_.trace())) / irrep_.dim_v;
  maps_ = reps::hom_G_basis(irrep_.realization, bundle.fiber());
  basis_ = MatD(bundle.rank(), static_cast<Eigen::Index>(maps_.size()));
  for (std::size_t j = 0; j < maps_.size(); ++j) basis_.col(static_cast<Eigen::Index>(j)) = maps_[j].col(0);
  coords_.compute(basis_);
}

bool PureSpace::in_component(const VecD& s) const {
  return (s - projector_ * s).norm() <= 1e-9 * std::max(1.0, s.norm());
}

bool PureSpace::is_pure(const VecD& s) const {
  if (basis_.cols() == 0) return s.norm() <= 1e-9;
  const VecD c = coords_.solve(s);
  return (basis_ * c - s).norm() <= 1e-9 * std::max(1.0, s.norm());
}

MatD PureSpace::equivariant_map(const VecD& s) const {
  MatD t = MatD::Zero(basis_.rows(), irrep_.dim_v);
  if (basis_.cols() == 0) return t;
  const VecD c = coords_.solve(s);
  for (std::size_t j = 0; j < maps_.size(); ++j) t += c(static_cast<Eigen::Index>(j)) * maps_[j];
  return t;
}

MatD PureSpace::span(const std::vector<VecD>& values) const {
  const int dv = irrep_.dim_v;
  MatD m(basis_.rows(), static_cast<Eigen::Index>(values.size()) * dv);
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double n = values[j].norm();
    m.middleCols(static_cast<Eigen::Index>(j) * dv, dv) = n > 0.0 ? MatD(equivariant_map(values[j]) / n) : MatD::Zero(m.rows(), dv);
  }
  return m;
}

double PureSpace::independence(const std::vector<VecD>& values) const {
  if (values.empty()) return 1.0;
  const MatD m = span(values);
  if (m.cols() > m.rows()) return 0.0;
  return linalg::min_singular_value(m);
}

VecD PureSpace::random_pure(sampling::Rng& rng) const {
  if (basis_.cols() == 0) throw Obstruction("component " + irrep_.label + " is zero");
  const VecD v = basis_ * gaussian(basis_.cols(), rng);
  return v / v.norm();
}

Section extend_nonvanishing_section(const GBundle<double>& bundle, const Simplex& simplex, const Section& boundary,
                                    const std::string& label, std::uint64_t seed) {
  if (!bundle.base().contains(simplex)) throw InvalidInput(simplex_name(simplex) + " is not a simplex of the base");
  check_section_shape(bundle, boundary);
  if (!boundary.defined_on(simplex)) throw InvalidInput("boundary section undefined on a vertex of " + simplex_name(simplex));
  const PureSpace pure(bundle, label);
  const int n = static_cast<int>(simplex.size()) - 1;
  if (pure.copies() < n + 1)
    throw Obstruction("component " + label + " has " + std::to_string(pure.copies()) + " copies; extension over a " +
                      std::to_string(n) + "-simplex needs " + std::to_string(n + 1));
  bool all_pure = true;
  for (int v : simplex) {
    const VecD& s = *boundary.vertex[static_cast<std::size_t>(v)];
    if (!pure.in_component(s)) throw InvalidInput("boundary value at vertex " + std::to_string(v) + " is not in component " + label);
    all_pure = all_pure && pure.is_pure(s);
  }
  if (n == 0) {
    if (boundary.vertex[static_cast<std::size_t>(simplex[0])]->norm() <= 1e-12) throw InvalidInput("section vanishes at a vertex");
    return boundary;
  }

  const auto grid = sample_grid(n);
  double bmin = std::numeric_limits<double>::infinity(), bsum = 0.0;
  int bcount = 0;
  for (const auto& p : grid) {
    if (!on_boundary(p)) continue;
    const double norm = evaluate(bundle, boundary, simplex, p).norm();
    bmin = std::min(bmin, norm);
    bsum += norm;
    ++bcount;
  }
  if (bmin <= 1e-12) throw InvalidInput("boundary section vanishes on " + simplex_name(simplex));
  const double scale = bsum / bcount;

  const auto interior_min = [&](const Section& sec) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : grid) m = std::min(m, evaluate(bundle, sec, simplex, p).norm());
    return m;
  };

  Section candidate = boundary;
  double best_norm = interior_min(candidate);
  if (best_norm >= 0.5 * bmin) return candidate;
  Section best = candidate;

  sampling::Rng rng(seed);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    VecD c = all_pure ? pure.random_pure(rng) : VecD(pure.projector() * gaussian(bundle.rank(), rng));
    c *= scale / c.norm();
    candidate.centers[simplex] = c;
    const double m = interior_min(candidate);
    if (m >= 0.5 * bmin) return candidate;
    if (m > best_norm) {
      best_norm = m;
      best = candidate;
    }
  }
  if (best_norm >= 1e-3 * bmin) return best;
  throw ResampleFailure("no nonvanishing extension over " + simplex_name(simplex) + " after " + std::to_string(kRetryBudget) +
                        " samples");
}

MatD frame_span_at(const PureSpace& pure, const Frame& frame, int v) {
  std::vector<VecD> vals;
  for (const auto& s : frame.sections) vals.push_back(*s.vertex[static_cast<std::size_t>(v)]);
  return pure.span(vals);
}

double frame_quality(const GBundle<double>& bundle, const PureSpace& pure, const Frame& frame, const Simplex& simplex,
                     const std::vector<double>& bary) {
  return pure.independence(values_at(bundle, frame.sections, frame.sections.size(), simplex, bary));
}

Frame extend_trivial_subbundle(const GBundle<double>& bundle, const Simplex& simplex, const Frame& frame, std::uint64_t seed) {
  if (!bundle.base().contains(simplex)) throw InvalidInput(simplex_name(simplex) + " is not a simplex of the base");
  const PureSpace pure(bundle, frame.label);
  for (std::size_t i = 0; i < frame.sections.size(); ++i) {
    const auto& s = frame.sections[i];
    check_section_shape(bundle, s);
    if (!s.defined_on(simplex))
      throw InvalidInput("frame section " + std::to_string(i) + " is undefined on a vertex of " + simplex_name(simplex));
    for (std::size_t v = 0; v < s.vertex.size(); ++v)
      if (s.vertex[v] && !pure.is_pure(*s.vertex[v]))
        throw InvalidInput("frame section " + std::to_string(i) + " is not a pure " + frame.label + " vector at vertex " +
                           std::to_string(v));
  }
  if (std::all_of(frame.sections.begin(), frame.sections.end(), [](const Section& s) { return s.global(); })) return frame;

  const int r = static_cast<int>(frame.sections.size());
  const int top = bundle.base().dimension();
  if (pure.copies() < r + top + 1)
    throw Obstruction("component " + frame.label + " has " + std::to_string(pure.copies()) + " copies; a rank-" +
                      std::to_string(r) + " frame over a " + std::to_string(top) + "-dimensional base needs " +
                      std::to_string(r + top + 1));

  sampling::Rng rng(seed);
  Frame out = frame;
  auto& secs = out.sections;
  for (std::size_t i = 0; i < secs.size(); ++i) {
    if (secs[i].global()) continue;
    const std::size_t count = i + 1;

    for (int v = 0; v < bundle.base().vertex_count(); ++v) {
      auto& slot = secs[i].vertex[static_cast<std::size_t>(v)];
      if (slot) continue;
      std::vector<VecD> prev = values_at(bundle, secs, i, {v}, {1.0});
      double best_q = -1.0;
      VecD best;
      for (int attempt = 0; attempt < kRetryBudget && best_q < 0.1; ++attempt) {
        VecD cand = pure.random_pure(rng);
        prev.push_back(cand);
        const double q = pure.independence(prev);
        prev.pop_back();
        if (q > best_q) {
          best_q = q;
          best = cand;
        }
      }
      if (best_q < kFloor) throw ResampleFailure("no independent frame value at vertex " + std::to_string(v));
      slot = best;
    }

    for (int d = 1; d <= top; ++d) {
      for (const auto& sigma : bundle.base().of_dimension(d)) {
        const bool inside = is_face(sigma, simplex);
        const auto grid = sample_grid(d);
        std::vector<double> scales;
        for (std::size_t j = 0; j < count; ++j) {
          double m = 0.0;
          for (int v : sigma) m = std::max(m, secs[j].vertex[static_cast<std::size_t>(v)]->norm());
          scales.push_back(m);
        }
        const auto measure = [&](bool boundary_only) {
          double q = std::numeric_limits<double>::infinity();
          for (const auto& p : grid)
            if (!boundary_only || on_boundary(p)) q = std::min(q, scaled_quality(pure, values_at(bundle, secs, count, sigma, p), scales));
          return q;
        };
        const double threshold = inside ? kFloor : std::max(0.25 * measure(true), kFloor);
        double best_q = measure(false);
        if (best_q >= threshold) continue;

        const Section original = secs[i];
        Section best = original;
        for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
          secs[i].centers[sigma] = pure.random_pure(rng) * scales[i];
          const double q = measure(false);
          if (q > best_q) {
            best_q = q;
            best = secs[i];
          }
          if (q >= threshold) break;
        }
        if (best_q < kFloor)
          throw ResampleFailure("no independent extension of frame section " + std::to_string(i) + " over " + simplex_name(sigma));
        secs[i] = best;
      }
    }
  }
  return out;
}

Frame stabilize_cokernel(const GBundle<double>& bundle, const std::string& label, const std::vector<MatD>& images,
                         std::uint64_t seed) {
  const int nv = bundle.base().vertex_count();
  if (static_cast<int>(images.size()) != nv) throw InvalidInput("linearization images must be given at every vertex");
  const PureSpace pure(bundle, label);
  const MatD& p = pure.projector();
  const MatD component = linalg::orthonormal_basis(p, 1e-9);
  const int full = static_cast<int>(component.cols());

  std::vector<MatD> im(static_cast<std::size_t>(nv));
  int needed = 0;
  for (int v = 0; v < nv; ++v) {
    const MatD& d = images[static_cast<std::size_t>(v)];
    if (d.rows() != bundle.rank()) throw InvalidInput("linearization image at vertex " + std::to_string(v) + " has the wrong height");
    im[static_cast<std::size_t>(v)] = linalg::orthonormal_basis(MatD(p * d), 1e-9);
    const int coker = full - static_cast<int>(im[static_cast<std::size_t>(v)].cols());
    needed = std::max(needed, (coker + pure.dim_v() - 1) / pure.dim_v());
  }
  Frame w{label, {}};
  if (needed == 0) return w;
  if (needed > pure.copies())
    throw Obstruction("cokernel needs " + std::to_string(needed) + " copies of " + label + " but the bundle has " +
                      std::to_string(pure.copies()));

  const auto spanned = [&](int v, const std::vector<VecD>& extra, bool with_frame) {
    MatD cols = im[static_cast<std::size_t>(v)];
    std::vector<VecD> vals;
    if (with_frame)
      for (const auto& s : w.sections) vals.push_back(*s.vertex[static_cast<std::size_t>(v)]);
    for (const auto& e : extra) vals.push_back(e);
    const MatD sp = pure.span(vals);
    MatD all(bundle.rank(), cols.cols() + sp.cols());
    all << cols, sp;
    return linalg::orthonormal_basis(all, 1e-9);
  };

  sampling::Rng rng(seed);
  for (const auto& sigma : bundle.base().maximal_simplices()) {
    const int s0 = sigma[0];
    // Each top simplex gets its own constant cover of coker D; the running
    // frame is only used afterwards to keep the spans independent.
    std::vector<VecD> fresh;  // constant in the chart of s0
    for (;;) {
      int uncovered = -1;
      MatD have;
      for (int v : sigma) {
        std::vector<VecD> moved;
        for (const auto& f : fresh) moved.push_back(bundle.transition(s0, v) * f);
        have = spanned(v, moved, false);
        if (have.cols() < full) {
          uncovered = v;
          break;
        }
      }
      if (uncovered < 0) break;
      // Pure vectors in the complement of what is already spanned at `uncovered`.
      const MatD rest = component * linalg::nullspace<double>(MatD(have.transpose() * component), 1e-9);
      MatD joined(bundle.rank(), pure.basis().cols() + rest.cols());
      joined << pure.basis(), -rest;
      const MatD meet = linalg::nullspace<double>(joined, 1e-9);
      if (meet.cols() == 0) throw MathFailure("cokernel at vertex " + std::to_string(uncovered) + " contains no copy of " + label);
      const VecD x = pure.basis() * (meet.topRows(pure.basis().cols()) * gaussian(meet.cols(), rng));
      fresh.push_back(bundle.transition(uncovered, s0) * x / x.norm());
    }
    if (fresh.empty()) continue;

    Frame grown = w;
    for (const auto& f : fresh) {
      Section s = Section::undefined(nv);
      for (int v : sigma) s.vertex[static_cast<std::size_t>(v)] = bundle.transition(s0, v) * f;
      grown.sections.push_back(std::move(s));
    }
    // Move the new values off the running frame so the spans stay independent.
    for (int v : sigma) {
      const auto vi = static_cast<std::size_t>(v);
      std::vector<VecD> old;
      for (const auto& s : w.sections) old.push_back(*s.vertex[vi]);
      const MatD q = linalg::orthonormal_basis(pure.span(old), 1e-9);
      for (std::size_t j = w.sections.size(); j < grown.sections.size(); ++j) {
        VecD& val = *grown.sections[j].vertex[vi];
        const double scale = std::max(val.norm(), 1.0);
        for (int attempt = 0;; ++attempt) {
          // Re-project so rounding never leaves the component; a value that
          // collapses onto the old frame is pure noise and gets resampled.
          val = pure.projector() * VecD(val - q * (q.transpose() * val));
          if (val.norm() > 1e-6 * scale) {
            std::vector<VecD> upto;
            for (std::size_t k = 0; k <= j; ++k) upto.push_back(*grown.sections[k].vertex[vi]);
            if (pure.independence(upto) > kFloor) break;
          }
          if (attempt == kRetryBudget) throw ResampleFailure("new frame vector at vertex " + std::to_string(v) + " stays dependent");
          val += 1e-3 * scale * pure.random_pure(rng);
        }
        val /= val.norm();
      }
    }
    w = extend_trivial_subbundle(bundle, sigma, grown, rng());
  }

  for (int v = 0; v < nv; ++v)
    if (spanned(v, {}, true).cols() < full)
      throw MathFailure("stabilized frame misses part of the cokernel at vertex " + std::to_string(v));
  return w;
}

}  // namespace equitrans::bundles
