#include "equitrans/group_reps.hpp"

#include "equitrans/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace equitrans::reps {

int endo_dimension(EndoType t) {
  switch (t) {
    case EndoType::R: return 1;
    case EndoType::C: return 2;
    case EndoType::H: return 4;
  }
  return 0;
}

std::string_view to_string(EndoType t) {
  switch (t) {
    case EndoType::R: return "R";
    case EndoType::C: return "C";
    case EndoType::H: return "H";
  }
  return "?";
}

EndoType endo_type_from_dim(int dim) {
  switch (dim) {
    case 1: return EndoType::R;
    case 2: return EndoType::C;
    case 4: return EndoType::H;
    default: throw MathFailure("endomorphism algebra of dimension " + std::to_string(dim) + " is not a division algebra");
  }
}

template <class S>
std::vector<S> character(const Representation<S>& rep) {
  std::vector<S> chi;
  chi.reserve(rep.matrices().size());
  for (const auto& m : rep.matrices()) chi.push_back(m.trace());
  return chi;
}

template <class S>
S character_inner(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.size() != b.size() || a.empty()) throw InvalidInput("characters sampled on different groups");
  S acc = S(0);
  for (std::size_t g = 0; g < a.size(); ++g) acc += a[g] * b[g];
  return acc / S(static_cast<long long>(a.size()));
}

namespace {

template <class S>
Irrep<S> make_irrep(std::string label, Representation<S> realization) {
  Irrep<S> ir{std::move(label), realization.dim(), EndoType::R, 1, character(realization), realization};
  const int d = static_cast<int>(hom_G_basis(realization, realization).size());
  ir.endo_type = endo_type_from_dim(d);
  ir.endo_dim = d;
  return ir;
}

template <class S>
Mat<S> reshape_row_major(const Mat<S>& column, Eigen::Index rows, Eigen::Index cols) {
  Mat<S> out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = column(i * cols + j, 0);
  return out;
}

}  // namespace

template <class S>
Irrep<S> trivial_irrep(const GroupPtr& group) {
  return make_irrep<S>("trivial", trivial_representation<S>(group, 1));
}

template <class S>
std::vector<Irrep<S>> nontrivial_irreps(const GroupPtr& group) {
  std::vector<Irrep<S>> out;
  if (group->is_circle()) {
    if constexpr (is_exact_v<S>) {
      throw InvalidInput("the circle group is only available in float mode");
    } else {
      for (int w = 1; w <= group->circle().max_weight(); ++w)
        out.push_back(make_irrep<double>("w" + std::to_string(w), weight_representation(group, {w})));
    }
    return out;
  }
  const auto& g = group->finite();
  if (!g.has_irrep_library()) throw InvalidInput("group '" + g.name() + "' has no irrep library");
  for (const auto& d : g.irreps()) {
    if constexpr (is_exact_v<S>) {
      if (d.exact.empty())
        throw InvalidInput("irrep '" + d.label + "' of " + g.name() + " has irrational character; use float mode");
      out.push_back(make_irrep<S>(d.label, Representation<S>(group, d.exact)));
    } else {
      out.push_back(make_irrep<S>(d.label, Representation<S>(group, d.floating)));
    }
  }
  return out;
}

template <class S>
Irrep<S> irrep_by_label(const GroupPtr& group, const std::string& label) {
  if (label == "trivial") return trivial_irrep<S>(group);
  if (group->is_circle() && label.size() > 1 && label[0] == 'w') {
    if constexpr (is_exact_v<S>) {
      throw InvalidInput("the circle group is only available in float mode");
    } else {
      const int w = std::stoi(label.substr(1));
      if (w < 1) throw InvalidInput("circle irreps have weight >= 1");
      return make_irrep<double>(label, weight_representation(group, {w}));
    }
  }
  for (auto& ir : nontrivial_irreps<S>(group))
    if (ir.label == label) return ir;
  throw InvalidInput("group " + group->name() + " has no irrep labelled '" + label + "'");
}

template <class S>
Mat<S> isotypic_projector(const Representation<S>& rep, const Irrep<S>& irrep, kernels::Backend backend) {
  if (!same_group(rep.group(), irrep.realization.group()))
    throw InvalidInput("irrep '" + irrep.label + "' belongs to a different group model");
  const auto n = static_cast<long long>(rep.group()->count());
  const S scale = S(static_cast<long long>(irrep.dim_v)) / S(static_cast<long long>(irrep.endo_dim) * n);
  std::vector<S> weights;
  weights.reserve(irrep.character.size());
  for (const auto& c : irrep.character) weights.push_back(scale * c);
  return kernels::weighted_sum<S>(rep.matrices(), weights, backend);
}

template <class S>
Mat<S> fixed_projector(const Representation<S>& rep, kernels::Backend backend) {
  const auto n = static_cast<std::size_t>(rep.group()->count());
  return kernels::weighted_sum<S>(rep.matrices(), std::vector<S>(n, S(1) / S(static_cast<long long>(n))), backend);
}

template <class S>
std::vector<Mat<S>> hom_G_basis(const Representation<S>& v, const Representation<S>& w, kernels::Backend backend) {
  if (!same_group(v.group(), w.group())) throw InvalidInput("hom_G_basis: representations of different groups");
  const Mat<S> avg = kernels::averaging_operator<S>(w.matrices(), v.inverse_matrices(), backend);
  Mat<S> span;
  if constexpr (is_exact_v<S>)
    span = linalg::select_columns<S>(avg, linalg::independent_columns<S>(avg));
  else
    span = linalg::orthonormal_basis(avg, 1e-9);
  std::vector<Mat<S>> out;
  for (Eigen::Index k = 0; k < span.cols(); ++k) out.push_back(reshape_row_major<S>(span.col(k), w.dim(), v.dim()));
  return out;
}

namespace {

template <class S>
MatD column_space(const Mat<S>& m) {
  return to_double<S>(linalg::select_columns<S>(m, linalg::independent_columns<S>(m)));
}

/// An equivariant map that is self-adjoint for an invariant inner product and
/// not scalar has an eigenspace that is a proper invariant subspace.
template <class S>
void symmetric_part_test(const Representation<S>& rep, const std::vector<Mat<S>>& endo) {
  const int d = rep.dim();
  MatD h = MatD::Zero(d, d);
  for (const auto& m : rep.matrices()) {
    const MatD md = to_double<S>(m);
    h += md.transpose() * md;
  }
  h /= static_cast<double>(rep.matrices().size());
  for (const auto& t : endo) {
    const MatD td = to_double<S>(t);
    const MatD sym = h * td + td.transpose() * h;
    Eigen::GeneralizedSelfAdjointEigenSolver<MatD> es(sym, h);
    const auto& ev = es.eigenvalues();
    const double spread = ev.maxCoeff() - ev.minCoeff();
    if (spread <= 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff())) continue;
    std::vector<int> cluster;
    for (int i = 0; i < d; ++i)
      if (ev(i) - ev.minCoeff() <= 1e-8 * std::max(1.0, spread)) cluster.push_back(i);
    throw ReducibleRepresentation("representation is reducible (non-scalar symmetric equivariant map)",
                                  linalg::select_columns<double>(es.eigenvectors(), cluster));
  }
}

}  // namespace

template <class S>
EndoInfo endo_type(const Representation<S>& rep) {
  const auto& group = rep.group();
  const bool has_library = group->is_circle() || group->finite().has_irrep_library();
  const Mat<S> id = Mat<S>::Identity(rep.dim(), rep.dim());
  if (has_library) {
    std::vector<Irrep<S>> candidates{trivial_irrep<S>(group)};
    for (auto& ir : nontrivial_irreps<S>(group)) candidates.push_back(std::move(ir));
    Mat<S> total = Mat<S>::Zero(rep.dim(), rep.dim());
    const Irrep<S>* found = nullptr;
    Mat<S> found_projector;
    for (const auto& ir : candidates) {
      const Mat<S> p = isotypic_projector(rep, ir);
      if (is_zero_matrix<S>(p)) continue;
      if (found)
        throw ReducibleRepresentation("representation has components of types '" + found->label + "' and '" + ir.label + "'",
                                      column_space<S>(found_projector));
      found = &ir;
      found_projector = p;
      total += p;
    }
    if (found && !approx_equal<S>(total, id))
      throw ReducibleRepresentation("representation has a component outside the irrep library", column_space<S>(found_projector));
    if (found && rep.dim() > found->dim_v) {
      const auto maps = hom_G_basis(found->realization, rep);
      throw ReducibleRepresentation("representation contains " + std::to_string(rep.dim() / found->dim_v) + " copies of '" +
                                        found->label + "'",
                                    column_space<S>(maps.front()));
    }
  }
  const auto endo = hom_G_basis(rep, rep);
  if (!has_library) symmetric_part_test(rep, endo);
  const int d = static_cast<int>(endo.size());
  return {endo_type_from_dim(d), d};
}

template <class S>
IsotypicDecomposition<S> decompose(const Representation<S>& rep, kernels::Backend backend) {
  IsotypicDecomposition<S> out;
  out.fixed = fixed_projector(rep, backend);
  out.fixed_rank = linalg::rank<S>(out.fixed);
  Mat<S> total = out.fixed;
  for (auto& ir : nontrivial_irreps<S>(rep.group())) {
    Mat<S> p = isotypic_projector(rep, ir, backend);
    if (is_zero_matrix<S>(p)) continue;
    total += p;
    const int r = linalg::rank<S>(p);
    out.pieces.push_back({std::move(ir), std::move(p), r});
  }
  out.complete = approx_equal<S>(total, Mat<S>::Identity(rep.dim(), rep.dim()));
  return out;
}

#define EQUITRANS_INSTANTIATE(S)                                                                               \
  template std::vector<S> character<S>(const Representation<S>&);                                              \
  template S character_inner<S>(const std::vector<S>&, const std::vector<S>&);                                 \
  template Irrep<S> trivial_irrep<S>(const GroupPtr&);                                                         \
  template std::vector<Irrep<S>> nontrivial_irreps<S>(const GroupPtr&);                                        \
  template Irrep<S> irrep_by_label<S>(const GroupPtr&, const std::string&);                                    \
  template Mat<S> isotypic_projector<S>(const Representation<S>&, const Irrep<S>&, kernels::Backend);          \
  template Mat<S> fixed_projector<S>(const Representation<S>&, kernels::Backend);                              \
  template std::vector<Mat<S>> hom_G_basis<S>(const Representation<S>&, const Representation<S>&, kernels::Backend); \
  template EndoInfo endo_type<S>(const Representation<S>&);                                                    \
  template IsotypicDecomposition<S> decompose<S>(const Representation<S>&, kernels::Backend);

EQUITRANS_INSTANTIATE(Rational)
EQUITRANS_INSTANTIATE(double)

}  // namespace equitrans::reps
