#include "exvib/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "exvib/units.hpp"

namespace exvib {

int HierarchyIndex::tier() const {
    return std::accumulate(entries.begin(), entries.end(), 0);
}

std::int64_t hierarchy_count(int n_slots, int depth) {
    // C(depth + n_slots, n_slots)
    std::int64_t c = 1;
    for (int j = 1; j <= n_slots; ++j) {
        c = c * (depth + j) / j;
    }
    return c;
}

HierarchyLayout enumerate_hierarchy(int n_sites, int matsubara_k, int depth,
                                    std::int64_t ado_cap) {
    if (n_sites < 1) throw std::invalid_argument("enumerate_hierarchy: n_sites must be >= 1");
    if (matsubara_k < 0) throw std::invalid_argument("enumerate_hierarchy: matsubara_k must be >= 0");
    if (depth < 0) throw std::invalid_argument("enumerate_hierarchy: depth must be >= 0");

    const int slots = n_sites * (matsubara_k + 1);
    const std::int64_t count = hierarchy_count(slots, depth);
    if (count > ado_cap) {
        throw std::invalid_argument("enumerate_hierarchy: " + std::to_string(count) +
                                    " ADOs exceed cap " + std::to_string(ado_cap));
    }

    HierarchyLayout layout;
    layout.n_sites = n_sites;
    layout.n_matsubara = matsubara_k;
    layout.depth = depth;
    layout.indices.reserve(count);

    // lexicographic enumeration of all vectors with sum <= depth
    std::vector<int> current(slots, 0);
    std::map<std::vector<int>, std::int64_t> position;
    auto emit = [&]() {
        position[current] = layout.count();
        layout.indices.push_back({current});
    };
    // iterative odometer with tier budget
    emit();
    while (true) {
        int slot = slots - 1;
        int tier = std::accumulate(current.begin(), current.end(), 0);
        while (slot >= 0) {
            // tier = sum of entries up to and including slot; incrementing the
            // slot and clearing everything to its right gives tier + 1
            if (tier + 1 <= depth) {
                ++current[slot];
                std::fill(current.begin() + slot + 1, current.end(), 0);
                break;
            }
            tier -= current[slot];
            --slot;
        }
        if (slot < 0) break;
        emit();
    }

    layout.raise_table.assign(layout.count() * slots, -1);
    layout.lower_table.assign(layout.count() * slots, -1);
    std::vector<int> probe;
    for (std::int64_t m = 0; m < layout.count(); ++m) {
        const auto& idx = layout.indices[m].entries;
        const int tier = layout.indices[m].tier();
        for (int s = 0; s < slots; ++s) {
            if (tier + 1 <= depth) {
                probe = idx;
                ++probe[s];
                layout.raise_table[m * slots + s] = position.at(probe);
            }
            if (idx[s] > 0) {
                probe = idx;
                --probe[s];
                layout.lower_table[m * slots + s] = position.at(probe);
            }
        }
    }
    return layout;
}

namespace {

// extract the 0/1 site indicator from a diagonal projector-type operator
Eigen::ArrayXd diagonal_indicator(const Matrix& q) {
    const Eigen::Index d = q.rows();
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            if (i != j && std::abs(q(i, j)) > 1e-14) {
                throw std::invalid_argument(
                    "HeomOperator: coupling operators must be diagonal in the propagation basis");
            }
        }
    }
    Eigen::ArrayXd s(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (std::abs(q(i, i).imag()) > 1e-14) {
            throw std::invalid_argument("HeomOperator: coupling operators must be real diagonal");
        }
        s(i) = q(i, i).real();
    }
    return s;
}

} // namespace

HeomOperator::HeomOperator(const SystemHamiltonian& h, const std::vector<Matrix>& coupling,
                           const BathDecomposition& bath, const HierarchyLayout& layout,
                           int threads)
    : dim_(h.dim()),
      n_ado_(layout.count()),
      n_slots_(layout.slots()),
      threads_(std::max(1, threads)),
      raise_table_(layout.raise_table),
      lower_table_(layout.lower_table) {
    if (static_cast<int>(coupling.size()) != layout.n_sites) {
        throw std::invalid_argument("HeomOperator: one coupling operator per site required");
    }
    if (bath.nu.size() != layout.n_matsubara + 1) {
        throw std::invalid_argument("HeomOperator: bath decomposition truncation does not match layout");
    }

    const double u = units::radians_per_ps_per_wavenumber;
    const int n_k = layout.n_matsubara + 1;

    // sparse Hamiltonian in rad/ps; commutator uses [H, rho] = A - A^dag with A = H rho
    for (Eigen::Index j = 0; j < dim_; ++j) {
        for (Eigen::Index i = 0; i < dim_; ++i) {
            if (h.matrix(i, j) != Complex(0.0, 0.0)) {
                h_sparse_.push_back({static_cast<int>(i), static_cast<int>(j), u * h.matrix(i, j)});
            }
        }
    }

    std::vector<Eigen::ArrayXd> site(layout.n_sites);
    for (int i = 0; i < layout.n_sites; ++i) site[i] = diagonal_indicator(coupling[i]);

    closure_ = Eigen::ArrayXd::Zero(dim_ * dim_);
    comm_mask_.resize(n_slots_);
    down_mask_.resize(n_slots_);
    for (int i = 0; i < layout.n_sites; ++i) {
        Eigen::ArrayXd mask(dim_ * dim_);
        for (Eigen::Index b = 0; b < dim_; ++b) {
            for (Eigen::Index a = 0; a < dim_; ++a) {
                mask(b * dim_ + a) = site[i](a) - site[i](b);
            }
        }
        closure_ += u * bath.remainder * mask.square();
        for (int k = 0; k < n_k; ++k) {
            const int slot = i * n_k + k;
            comm_mask_[slot] = mask;
            const double cabs = std::abs(bath.coeff(k));
            const Complex cl = cabs > 0.0 ? bath.coeff(k) / std::sqrt(cabs) : Complex(0.0, 0.0);
            Eigen::ArrayXcd dm(dim_ * dim_);
            for (Eigen::Index b = 0; b < dim_; ++b) {
                for (Eigen::Index a = 0; a < dim_; ++a) {
                    dm(b * dim_ + a) =
                        Complex(0.0, -1.0) * (cl * site[i](a) - std::conj(cl) * site[i](b));
                }
            }
            down_mask_[slot] = dm;
        }
    }

    gamma_.resize(n_ado_);
    up_coef_.assign(n_ado_ * n_slots_, Complex(0.0, 0.0));
    down_scale_.assign(n_ado_ * n_slots_, 0.0);
    for (std::int64_t m = 0; m < n_ado_; ++m) {
        const auto& idx = layout.indices[m].entries;
        double gamma = 0.0;
        for (int slot = 0; slot < n_slots_; ++slot) {
            const int k = slot % n_k;
            const int n_ik = idx[slot];
            gamma += n_ik * bath.nu(k);
            const double cabs = std::abs(bath.coeff(k));
            up_coef_[m * n_slots_ + slot] =
                Complex(0.0, -u * std::sqrt((n_ik + 1) * cabs));
            down_scale_[m * n_slots_ + slot] = u * std::sqrt(double(n_ik));
        }
        gamma_[m] = u * gamma;
        max_damping_ = std::max(max_damping_, gamma);
    }

    scratch_.resize(threads_);
    for (auto& s : scratch_) s.resize(dim_, dim_);
}

void HeomOperator::rhs_range(const Vector& y, Vector& dy, std::int64_t begin,
                             std::int64_t end, Matrix& scratch) const {
    const Eigen::Index dd = dim_ * dim_;
    const Complex* ybase = y.data();
    Complex* dybase = dy.data();

    for (std::int64_t m = begin; m < end; ++m) {
        Eigen::Map<const Matrix> rho(ybase + m * dd, dim_, dim_);
        Eigen::Map<Matrix> out(dybase + m * dd, dim_, dim_);

        // A = H rho (sparse); [H, rho] = A - A^dag for Hermitian rho
        scratch.setZero();
        for (const auto& t : h_sparse_) {
            scratch.row(t.row) += t.value * rho.row(t.col);
        }
        out.noalias() = Complex(0.0, -1.0) * (scratch - scratch.adjoint());

        Eigen::Map<Eigen::ArrayXcd> out_arr(dybase + m * dd, dd);
        Eigen::Map<const Eigen::ArrayXcd> rho_arr(ybase + m * dd, dd);
        out_arr -= gamma_[m] * rho_arr + closure_ * rho_arr;

        for (int slot = 0; slot < n_slots_; ++slot) {
            const std::int64_t up = raise_table_[m * n_slots_ + slot];
            if (up >= 0) {
                const Complex coef = up_coef_[m * n_slots_ + slot];
                if (coef != Complex(0.0, 0.0)) {
                    Eigen::Map<const Eigen::ArrayXcd> src(ybase + up * dd, dd);
                    out_arr += coef * (comm_mask_[slot] * src);
                }
            }
            const std::int64_t down = lower_table_[m * n_slots_ + slot];
            if (down >= 0) {
                const double scale = down_scale_[m * n_slots_ + slot];
                if (scale != 0.0) {
                    Eigen::Map<const Eigen::ArrayXcd> src(ybase + down * dd, dd);
                    out_arr += scale * (down_mask_[slot] * src);
                }
            }
        }
    }
}

void HeomOperator::operator()(const Vector& y, Vector& dy) const {
    if (y.size() != state_size()) {
        throw std::invalid_argument("HeomOperator: state size mismatch");
    }
    dy.resize(y.size());

    if (threads_ <= 1 || n_ado_ < 2 * threads_) {
        rhs_range(y, dy, 0, n_ado_, scratch_[0]);
        return;
    }
    // contiguous chunks; each ADO is computed exactly as in the sequential
    // path, so results are bit-identical for any thread count
    std::vector<std::thread> workers;
    workers.reserve(threads_);
    const std::int64_t chunk = (n_ado_ + threads_ - 1) / threads_;
    for (int t = 0; t < threads_; ++t) {
        const std::int64_t begin = t * chunk;
        const std::int64_t end = std::min<std::int64_t>(begin + chunk, n_ado_);
        if (begin >= end) break;
        workers.emplace_back([this, &y, &dy, begin, end, t] {
            rhs_range(y, dy, begin, end, scratch_[t]);
        });
    }
    for (auto& w : workers) w.join();
}

Vector HeomOperator::pack_initial(const Matrix& rho0) const {
    if (rho0.rows() != dim_ || rho0.cols() != dim_) {
        throw std::invalid_argument("HeomOperator: initial state dimension mismatch");
    }
    Vector y = Vector::Zero(state_size());
    Eigen::Map<Matrix>(y.data(), dim_, dim_) = rho0;
    return y;
}

std::string HeomOperator::stiffness_hint() const {
    std::ostringstream os;
    os << "largest tier damping " << max_damping_ << " cm^-1 ("
       << max_damping_ * units::radians_per_ps_per_wavenumber
       << " 1/ps); reduce hierarchy depth or loosen tolerances";
    return os.str();
}

} // namespace exvib
