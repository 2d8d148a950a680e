#include "gradecalc/spectral_plan.hpp"

#include "gradecalc/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

namespace gradecalc {

namespace {

std::mutex fftw_mu;

void eigensolve_real(const Eigen::MatrixXd& a, Eigen::VectorXd& w, Eigen::MatrixXcd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw EigensolveError("real symmetric eigensolve did not converge");
  w = es.eigenvalues();
  v = es.eigenvectors().cast<std::complex<double>>();
}

void eigensolve_complex(const Eigen::MatrixXcd& a, Eigen::VectorXd& w, Eigen::MatrixXcd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) throw EigensolveError("Hermitian eigensolve did not converge");
  w = es.eigenvalues();
  v = es.eigenvectors();
}

// Restrict a coefficient that depends only on `axes` to those variables.
Polynomial restrict_to(const Polynomial& c, const std::vector<std::size_t>& axes) {
  Polynomial r(axes.size());
  for (const auto& [e, q] : c.terms()) {
    Polynomial::Exponents d(axes.size());
    std::size_t used = 0;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      d[k] = e[axes[k]];
      used += e[axes[k]];
    }
    if (used != std::accumulate(e.begin(), e.end(), 0u))
      throw std::logic_error("coefficient depends on a periodic axis");
    r.add_term(d, q);
  }
  return r;
}

}  // namespace

int SpectralPlan::homogeneous_dimension() const { return std::accumulate(weights_.begin(), weights_.end(), 0); }

SpectralPlan SpectralPlan::from_matrix(const Eigen::MatrixXd& a, const Grid& g, int degree, std::vector<int> weights) {
  if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != g.size())
    throw std::invalid_argument("matrix size does not match grid");
  SpectralPlan p;
  p.grid_ = g;
  p.degree_ = degree;
  p.weights_ = std::move(weights);
  p.modes_.assign(g.dim(), AxisMode::ZeroExtension);
  for (std::size_t j = 0; j < g.dim(); ++j) p.block_axes_.push_back(j);
  p.block_offsets_.resize(g.size());
  std::iota(p.block_offsets_.begin(), p.block_offsets_.end(), 0);
  p.mode_offsets_ = {0};
  const double an = a.norm();
  p.sym_defect_ = an == 0 ? 0.0 : (a - a.transpose()).norm() / an;
  Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  auto blocks = std::make_shared<std::vector<Block>>(1);
  eigensolve_real(s, (*blocks)[0].lambda, (*blocks)[0].vectors);
  // Probe reconstruction.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  Eigen::VectorXd x(s.rows());
  for (auto& v : x) v = nd(rng);
  const auto& blk = (*blocks)[0];
  Eigen::VectorXcd rec = blk.vectors * (blk.lambda.cast<std::complex<double>>().asDiagonal() *
                                        (blk.vectors.adjoint() * x.cast<std::complex<double>>()));
  const double lmax = std::max(std::abs(blk.lambda.minCoeff()), std::abs(blk.lambda.maxCoeff()));
  p.recon_residual_ = lmax == 0 ? 0.0 : (rec - (s * x).cast<std::complex<double>>()).norm() / (lmax * x.norm());
  p.blocks_ = blocks;
  p.mode_block_ = {{0, false}};
  p.modes_of_block_ = {{0}};
  p.finish();
  return p;
}

SpectralPlan SpectralPlan::from_operator(const PolyDiffOp& op, const Grid& g, int degree, std::vector<int> weights,
                                         const PlanOptions& opts) {
  if (op.num_vars() != g.dim()) throw std::invalid_argument("operator arity differs from grid dimension");
  g.check_budget(opts.point_budget);
  SpectralPlan p;
  p.grid_ = g;
  p.degree_ = degree;
  p.order_ = opts.order;
  p.weights_ = std::move(weights);
  const std::size_t n = g.dim();
  p.modes_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const bool free = opts.periodic_free_axes && !op.coefficient_depends_on(j);
    p.modes_[j] = free ? AxisMode::Periodic : opts.boundary;
    (free ? p.periodic_axes_ : p.block_axes_).push_back(j);
  }

  // Flat offsets for block-axis nodes and periodic-axis modes.
  auto offsets = [&](const std::vector<std::size_t>& axes) {
    std::vector<std::size_t> off{0};
    for (std::size_t j : axes) {
      std::vector<std::size_t> next;
      for (std::size_t o : off)
        for (int i = 0; i < g.count(j); ++i) next.push_back(o + static_cast<std::size_t>(i) * g.stride(j));
      off.swap(next);
    }
    return off;
  };
  p.block_offsets_ = offsets(p.block_axes_);
  p.mode_offsets_ = offsets(p.periodic_axes_);
  const std::size_t nb = p.block_offsets_.size(), nf = p.mode_offsets_.size();

  // Group terms by their periodic-axis derivative orders.
  std::map<std::vector<unsigned>, PolyDiffOp> parts;
  for (const auto& [beta, c] : op.terms()) {
    std::vector<unsigned> bf, bb;
    for (std::size_t j : p.periodic_axes_) bf.push_back(beta[j]);
    for (std::size_t j : p.block_axes_) bb.push_back(beta[j]);
    auto it = parts.try_emplace(bf, PolyDiffOp(p.block_axes_.size())).first;
    it->second.add_term(bb, restrict_to(c, p.block_axes_));
  }
  std::vector<std::vector<unsigned>> part_keys;
  std::vector<Eigen::MatrixXd> part_mats;
  if (!p.block_axes_.empty()) {
    std::vector<double> hw;
    std::vector<int> cnt;
    for (std::size_t j : p.block_axes_) {
      hw.push_back(g.half_width(j));
      cnt.push_back(g.count(j));
    }
    Grid sub(hw, cnt);
    DiscretizationOptions dopt{opts.order, std::vector<AxisMode>(p.block_axes_.size(), opts.boundary)};
    for (const auto& [key, sop] : parts) {
      part_keys.push_back(key);
      part_mats.emplace_back(discretize_sparse(sop, sub, dopt));
    }
  } else {
    for (const auto& [key, sop] : parts) {
      part_keys.push_back(key);
      Eigen::MatrixXd m(1, 1);
      m(0, 0) = sop.terms().empty() ? 0.0 : to_double(sop.terms().begin()->second.constant_term());
      part_mats.push_back(m);
    }
  }

  // Mode multi-indices and conjugate partners.
  std::vector<std::vector<int>> kappa(nf);
  std::vector<std::size_t> partner(nf);
  {
    std::vector<int> k(p.periodic_axes_.size(), 0);
    for (std::size_t m = 0; m < nf; ++m) {
      kappa[m] = k;
      for (std::size_t a = k.size(); a-- > 0;) {
        if (++k[a] < g.count(p.periodic_axes_[a])) break;
        k[a] = 0;
      }
    }
    for (std::size_t m = 0; m < nf; ++m) {
      std::size_t flat = 0;
      for (std::size_t a = 0; a < p.periodic_axes_.size(); ++a) {
        const int N = g.count(p.periodic_axes_[a]);
        flat = flat * N + static_cast<std::size_t>((N - kappa[m][a]) % N);
      }
      partner[m] = flat;
    }
  }

  std::vector<std::size_t> unique_modes;
  p.mode_block_.resize(nf);
  for (std::size_t m = 0; m < nf; ++m) {
    if (partner[m] < m) {
      p.mode_block_[m] = {p.mode_block_[partner[m]].block, !p.mode_block_[partner[m]].conjugate};
      p.modes_of_block_[p.mode_block_[m].block].push_back(m);
    } else {
      p.mode_block_[m] = {unique_modes.size(), false};
      p.modes_of_block_.push_back({m});
      unique_modes.push_back(m);
    }
  }

  auto blocks = std::make_shared<std::vector<Block>>(unique_modes.size());
  std::vector<double> defect_sq(unique_modes.size()), norm_sq(unique_modes.size()), resid(unique_modes.size());
  for (std::size_t b = 0; b < unique_modes.size(); ++b) {
    const std::size_t m = unique_modes[b];
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nb, nb);
    for (std::size_t t = 0; t < part_keys.size(); ++t) {
      std::complex<double> s = 1;
      for (std::size_t q = 0; q < p.periodic_axes_.size(); ++q) {
        const std::size_t j = p.periodic_axes_[q];
        const int order_j = static_cast<int>(part_keys[t][q]);
        if (!order_j) continue;
        s *= periodic_symbol(order_j, opts.order, kappa[m][q], g.count(j)) *
             std::pow(g.spacing(j), -static_cast<double>(order_j));
      }
      if (s == std::complex<double>(0)) continue;
      a += s * part_mats[t].cast<std::complex<double>>();
    }
    const double mult = static_cast<double>(p.modes_of_block_[b].size());
    norm_sq[b] = mult * a.squaredNorm();
    defect_sq[b] = mult * (a - a.adjoint()).squaredNorm();
    Eigen::MatrixXcd s = 0.5 * (a + a.adjoint());
    Block& blk = (*blocks)[b];
    if (s.imag().cwiseAbs().maxCoeff() == 0.0) eigensolve_real(s.real(), blk.lambda, blk.vectors);
    else eigensolve_complex(s, blk.lambda, blk.vectors);
    std::mt19937_64 rng(1000 + b);
    std::normal_distribution<double> nd;
    Eigen::VectorXcd x(nb);
    for (auto& v : x) v = {nd(rng), nd(rng)};
    Eigen::VectorXcd rec = blk.vectors * (blk.lambda.cast<std::complex<double>>().asDiagonal() *
                                          (blk.vectors.adjoint() * x));
    const double lmax = blk.lambda.cwiseAbs().maxCoeff();
    resid[b] = lmax == 0 ? 0.0 : (rec - s * x).norm() / (lmax * x.norm());
  }
  const double ns = std::accumulate(norm_sq.begin(), norm_sq.end(), 0.0);
  p.sym_defect_ = ns == 0 ? 0.0 : std::sqrt(std::accumulate(defect_sq.begin(), defect_sq.end(), 0.0) / ns);
  p.recon_residual_ = resid.empty() ? 0.0 : *std::max_element(resid.begin(), resid.end());
  p.blocks_ = blocks;
  p.finish();
  return p;
}

SpectralPlan SpectralPlan::build(const GroupLaw& law, const RocklandSpec& spec, const Grid& g,
                                 const PlanOptions& opts) {
  auto fields = left_invariant_fields(law);
  return from_operator(normal_form(spec.expr, fields), g, spec.degree, law.algebra().weights(), opts);
}

void SpectralPlan::finish() {
  lambda_min_ = std::numeric_limits<double>::infinity();
  lambda_max_ = -std::numeric_limits<double>::infinity();
  for (const auto& b : *blocks_) {
    lambda_min_ = std::min(lambda_min_, b.lambda.minCoeff() * lambda_scale_);
    lambda_max_ = std::max(lambda_max_, b.lambda.maxCoeff() * lambda_scale_);
  }
}

std::vector<double> SpectralPlan::eigenvalues() const {
  std::vector<double> out;
  out.reserve(grid_.size());
  for (std::size_t b = 0; b < blocks_->size(); ++b)
    for (std::size_t k = 0; k < modes_of_block_[b].size(); ++k)
      for (double l : (*blocks_)[b].lambda) out.push_back(l * lambda_scale_);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::complex<double>> SpectralPlan::forward(const GridFunction& f) const {
  std::vector<std::complex<double>> data(f.values().begin(), f.values().end());
  if (periodic_axes_.empty()) return data;
  std::vector<fftw_iodim> dims, howmany;
  for (std::size_t j : periodic_axes_)
    dims.push_back({grid_.count(j), static_cast<int>(grid_.stride(j)), static_cast<int>(grid_.stride(j))});
  for (std::size_t j : block_axes_)
    howmany.push_back({grid_.count(j), static_cast<int>(grid_.stride(j)), static_cast<int>(grid_.stride(j))});
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mu);
    plan = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(), static_cast<int>(howmany.size()),
                              howmany.data(), ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mu);
    fftw_destroy_plan(plan);
  }
  return data;
}

GridFunction SpectralPlan::backward(std::vector<std::complex<double>>& data) const {
  GridFunction out(grid_);
  if (!periodic_axes_.empty()) {
    std::vector<fftw_iodim> dims, howmany;
    for (std::size_t j : periodic_axes_)
      dims.push_back({grid_.count(j), static_cast<int>(grid_.stride(j)), static_cast<int>(grid_.stride(j))});
    for (std::size_t j : block_axes_)
      howmany.push_back({grid_.count(j), static_cast<int>(grid_.stride(j)), static_cast<int>(grid_.stride(j))});
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(fftw_mu);
      plan = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(), static_cast<int>(howmany.size()),
                                howmany.data(), ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
      std::lock_guard<std::mutex> lock(fftw_mu);
      fftw_destroy_plan(plan);
    }
  }
  const double inv = 1.0 / static_cast<double>(mode_offsets_.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real() * inv;
  return out;
}

GridFunction SpectralPlan::apply(const std::function<double(double)>& g, const GridFunction& f) const {
  return apply_many({g}, f).front();
}

std::vector<GridFunction> SpectralPlan::apply_many(const std::vector<std::function<double(double)>>& gs,
                                                   const GridFunction& f) const {
  if (!(f.grid() == grid_)) throw std::invalid_argument("function does not live on the plan's grid");
  const std::size_t m = gs.size();
  const std::size_t nb = block_offsets_.size();
  auto data = forward(f);
  std::vector<std::vector<std::complex<double>>> outs(m, std::vector<std::complex<double>>(data.size()));
  // Blocks write disjoint positions, so a pure parallel map is safe.
  parallel_for(blocks_->size(), [&](std::size_t b0, std::size_t b1) {
    Eigen::VectorXcd v(nb);
    Eigen::MatrixXcd G(nb, m);
    for (std::size_t b = b0; b < b1; ++b) {
      const Block& blk = (*blocks_)[b];
      Eigen::MatrixXd gv(nb, m);
      for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t k = 0; k < m; ++k) gv(i, k) = gs[k](blk.lambda[i] * lambda_scale_);
      for (std::size_t mode : modes_of_block_[b]) {
        const bool conj = mode_block_[mode].conjugate;
        const std::size_t mo = mode_offsets_[mode];
        for (std::size_t i = 0; i < nb; ++i) v[i] = data[mo + block_offsets_[i]];
        Eigen::VectorXcd c = conj ? Eigen::VectorXcd(blk.vectors.transpose() * v)
                                  : Eigen::VectorXcd(blk.vectors.adjoint() * v);
        G = gv.cast<std::complex<double>>().array().colwise() * c.array();
        Eigen::MatrixXcd W = conj ? Eigen::MatrixXcd(blk.vectors.conjugate() * G) : Eigen::MatrixXcd(blk.vectors * G);
        for (std::size_t k = 0; k < m; ++k)
          for (std::size_t i = 0; i < nb; ++i) outs[k][mo + block_offsets_[i]] = W(i, k);
      }
    }
  });
  std::vector<GridFunction> result;
  result.reserve(m);
  for (auto& o : outs) result.push_back(backward(o));
  return result;
}

SpectralPlan SpectralPlan::rescaled(double r) const {
  if (!(r > 0)) throw std::invalid_argument("dilation factor must be positive");
  SpectralPlan p(*this);
  p.grid_ = grid_.dilated(weights_, r);
  p.lambda_scale_ = lambda_scale_ * std::pow(r, -degree_);
  p.finish();
  return p;
}

}  // namespace gradecalc
