#include "equitrans/bundles.hpp"

#include "equitrans/linalg.hpp"

namespace equitrans::bundles {

namespace {

std::string edge_name(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

template <class S>
int subspace_rank(const Mat<S>& basis) {
  return basis.cols() == 0 ? 0 : linalg::rank<S>(basis, 1e-9);
}

/// True when span(a) ⊆ span(b) for full-column-rank b.
template <class S>
bool contained_in(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() == 0) return true;
  Mat<S> joined(b.rows(), a.cols() + b.cols());
  joined << b, a;
  return subspace_rank<S>(joined) == subspace_rank<S>(b);
}

}  // namespace

template <class S>
GBundle<S>::GBundle(SimplicialBase base, reps::Representation<S> fiber, const std::map<Edge, Mat<S>>& transitions)
    : base_(std::move(base)), fiber_(std::move(fiber)), identity_(Mat<S>::Identity(fiber_.dim(), fiber_.dim())) {
  const int d = fiber_.dim();
  for (const auto& [edge, m] : transitions) {
    const auto [a, b] = edge;
    if (a >= b) throw InvalidInput("transition keys must be (a, b) with a < b, got " + edge_name(a, b));
    if (!base_.contains({a, b})) throw InvalidInput("transition on " + edge_name(a, b) + " which is not an edge");
    if (m.rows() != d || m.cols() != d) throw InvalidInput("transition on " + edge_name(a, b) + " has the wrong shape");
  }
  for (const auto& e : base_.of_dimension(1)) {
    const int a = e[0], b = e[1];
    const auto it = transitions.find({a, b});
    const Mat<S> fwd = it == transitions.end() ? identity_ : it->second;
    Mat<S> back;
    if constexpr (is_exact_v<S>) {
      try {
        back = linalg::inverse<S>(fwd);
      } catch (const MathFailure&) {
        throw InvalidInput("transition on " + edge_name(a, b) + " is singular");
      }
    } else {
      if (!approx_equal<S>(fwd.transpose() * fwd, identity_))
        throw InvalidInput("transition on " + edge_name(a, b) + " is not orthogonal");
      back = fwd.transpose();
    }
    for (int g = 0; g < fiber_.group()->count(); ++g)
      if (!approx_equal<S>(fwd * fiber_(g), fiber_(g) * fwd))
        throw InvalidInput("transition on " + edge_name(a, b) + " is not equivariant (element " + std::to_string(g) + ")");
    tau_[{a, b}] = fwd;
    tau_[{b, a}] = back;
  }
  for (const auto& t : base_.of_dimension(2)) {
    const int a = t[0], b = t[1], c = t[2];
    if (!approx_equal<S>(Mat<S>(tau_.at({b, c}) * tau_.at({a, b})), tau_.at({a, c})))
      throw InvalidInput("transitions violate the cocycle condition on (" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ")");
  }
}

template <class S>
const Mat<S>& GBundle<S>::transition(int from, int to) const {
  if (from == to) return identity_;
  const auto it = tau_.find({from, to});
  if (it == tau_.end()) throw InvalidInput("no edge " + edge_name(from, to) + " in the base");
  return it->second;
}

template <class S>
IsotypicSplitting<S> decompose_bundle(const GBundle<S>& bundle, kernels::Backend backend) {
  IsotypicSplitting<S> out;
  out.fiberwise = reps::decompose(bundle.fiber(), backend);
  for (const auto& e : bundle.base().of_dimension(1)) {
    const Mat<S>& tau = bundle.transition(e[0], e[1]);
    const auto check = [&](const Mat<S>& p, const std::string& label) {
      if (!approx_equal<S>(Mat<S>(tau * p), Mat<S>(p * tau)))
        throw InvalidInput("transition on (" + std::to_string(e[0]) + "," + std::to_string(e[1]) +
                           ") does not preserve the '" + label + "' component");
    };
    check(out.fiberwise.fixed, "fixed");
    for (const auto& piece : out.fiberwise.pieces) check(piece.projector, piece.irrep.label);
  }
  // Uniform fibers make ranks constant, so every component reports the same ranks.
  for (int c = 0; c < bundle.base().component_count(); ++c) {
    ComponentRanks<S> cr;
    cr.component = c;
    cr.fixed_rank = out.fiberwise.fixed_rank;
    for (const auto& piece : out.fiberwise.pieces) cr.ranks[piece.irrep.label] = piece.rank;
    out.components.push_back(std::move(cr));
  }
  return out;
}

template <class S>
std::vector<Mat<S>> equivariant_average_bundle_map(const reps::Representation<S>& source, const reps::Representation<S>& target,
                                                   const std::vector<Mat<S>>& raw, kernels::Backend backend) {
  if (!reps::same_group(source.group(), target.group())) throw InvalidInput("bundle map between different group models");
  const auto inverse = source.inverse_matrices();
  std::vector<Mat<S>> out;
  out.reserve(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    if (raw[v].rows() != target.dim() || raw[v].cols() != source.dim())
      throw InvalidInput("raw map at vertex " + std::to_string(v) + " has the wrong shape");
    out.push_back(kernels::twisted_average<S>(target.matrices(), raw[v], inverse, backend));
  }
  return out;
}

template <class S>
std::vector<Mat<S>> equivariant_average_bundle_map(const GBundle<S>& bundle, const std::vector<Mat<S>>& raw,
                                                   kernels::Backend backend) {
  if (static_cast<int>(raw.size()) != bundle.base().vertex_count()) throw InvalidInput("raw map must be given at every vertex");
  return equivariant_average_bundle_map(bundle.fiber(), bundle.fiber(), raw, backend);
}

template <class S>
Mat<S> invariant_metric(const reps::Representation<S>& rep) {
  Mat<S> h = Mat<S>::Zero(rep.dim(), rep.dim());
  for (const auto& m : rep.matrices()) h += m.transpose() * m;
  return h / S(static_cast<long long>(rep.group()->count()));
}

template <class S>
Complement<S> invariant_complement(const GBundle<S>& bundle, const Subbundle<S>& f) {
  const int n = bundle.base().vertex_count();
  if (static_cast<int>(f.basis.size()) != n) throw InvalidInput("subbundle must be given at every vertex");
  std::vector<int> ranks;
  for (int v = 0; v < n; ++v) {
    const auto& b = f.basis[static_cast<std::size_t>(v)];
    if (b.rows() != bundle.rank()) throw InvalidInput("subbundle basis at vertex " + std::to_string(v) + " has the wrong height");
    ranks.push_back(subspace_rank<S>(b));
    if (ranks.back() != b.cols()) throw InvalidInput("subbundle basis at vertex " + std::to_string(v) + " is not independent");
    for (int g = 0; g < bundle.group()->count(); ++g)
      if (!contained_in<S>(Mat<S>(bundle.fiber()(g) * b), b))
        throw InvalidInput("subbundle fiber at vertex " + std::to_string(v) + " is not invariant");
  }
  for (const auto& e : bundle.base().of_dimension(1)) {
    const int a = e[0], b = e[1];
    if (ranks[static_cast<std::size_t>(a)] != ranks[static_cast<std::size_t>(b)])
      throw InvalidInput("subbundle rank jumps between vertices " + std::to_string(a) + " and " + std::to_string(b));
    if (!contained_in<S>(Mat<S>(bundle.transition(a, b) * f.basis[static_cast<std::size_t>(a)]), f.basis[static_cast<std::size_t>(b)]))
      throw InvalidInput("subbundle is not preserved by the transition (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  const Mat<S> h = invariant_metric(bundle.fiber());
  const Mat<S> id = Mat<S>::Identity(bundle.rank(), bundle.rank());
  Complement<S> out;
  for (int v = 0; v < n; ++v) {
    const Mat<S>& b = f.basis[static_cast<std::size_t>(v)];
    if (b.cols() == 0) {
      out.complement.basis.push_back(id);
      out.projector_f.push_back(Mat<S>::Zero(bundle.rank(), bundle.rank()));
      out.projector_perp.push_back(id);
      continue;
    }
    const Mat<S> bth = b.transpose() * h;
    const Mat<S> p = b * linalg::inverse<S>(Mat<S>(bth * b)) * bth;
    out.complement.basis.push_back(linalg::nullspace<S>(bth));
    out.projector_f.push_back(p);
    out.projector_perp.push_back(id - p);
  }
  return out;
}

#define EQUITRANS_INSTANTIATE(S)                                                                                    \
  template class GBundle<S>;                                                                                        \
  template IsotypicSplitting<S> decompose_bundle<S>(const GBundle<S>&, kernels::Backend);                           \
  template std::vector<Mat<S>> equivariant_average_bundle_map<S>(const reps::Representation<S>&,                     \
                                                                 const reps::Representation<S>&,                     \
                                                                 const std::vector<Mat<S>>&, kernels::Backend);      \
  template std::vector<Mat<S>> equivariant_average_bundle_map<S>(const GBundle<S>&, const std::vector<Mat<S>>&,      \
                                                                 kernels::Backend);                                  \
  template Mat<S> invariant_metric<S>(const reps::Representation<S>&);                                              \
  template Complement<S> invariant_complement<S>(const GBundle<S>&, const Subbundle<S>&);

EQUITRANS_INSTANTIATE(Rational)
EQUITRANS_INSTANTIATE(double)

}  // namespace equitrans::bundles
