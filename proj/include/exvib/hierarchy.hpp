// hierarchy.hpp — auxiliary-density-operator hierarchy and its equation of motion
//
// ADOs are indexed by multi-indices n = (n_ik), one slot per (site i,
// Matsubara term k), truncated at tier sum(n_ik) <= L. All ADOs are stored
// rescaled; the tier-0 element is the physical reduced density matrix.
//
// The flat state vector stacks the ADO matrices column-major in the fixed
// lexicographic index order, so the whole hierarchy propagates as one
// Eigen::VectorXcd.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exvib/bath.hpp"
#include "exvib/model.hpp"
#include "exvib/types.hpp"

namespace exvib {

struct HierarchyIndex {
    std::vector<int> entries; // slot = site*(K+1) + k

    int tier() const;
    bool operator==(const HierarchyIndex&) const = default;
};

struct HierarchyLayout {
    int n_sites = 0;
    int n_matsubara = 0; // K
    int depth = 0;       // L
    std::vector<HierarchyIndex> indices; // lexicographic order, element 0 is all-zeros

    // neighbor positions, flat [ado * slots + slot]; -1 when outside the set
    std::vector<std::int64_t> raise_table;
    std::vector<std::int64_t> lower_table;

    int slots() const { return n_sites * (n_matsubara + 1); }
    std::int64_t count() const { return static_cast<std::int64_t>(indices.size()); }
};

inline constexpr std::int64_t default_ado_cap = 2'000'000;

// number of multi-indices with D slots and tier <= L: C(L + D, D)
std::int64_t hierarchy_count(int n_slots, int depth);

HierarchyLayout enumerate_hierarchy(int n_sites, int matsubara_k, int depth,
                                    std::int64_t ado_cap = default_ado_cap);

// Right-hand side of the rescaled hierarchy. Inputs are in cm^-1; the
// derivative is returned in 1/ps. Coupling operators must be diagonal in the
// propagation basis (site projectors are). ADOs are assumed Hermitian, which
// the flow preserves.
class HeomOperator {
public:
    HeomOperator(const SystemHamiltonian& h, const std::vector<Matrix>& coupling,
                 const BathDecomposition& bath, const HierarchyLayout& layout,
                 int threads = 1);

    void operator()(const Vector& y, Vector& dy) const;

    Eigen::Index ado_dim() const { return dim_; }
    Eigen::Index state_size() const { return dim_ * dim_ * n_ado_; }
    std::int64_t ado_count() const { return n_ado_; }

    // initial hierarchy state: tier-0 slot = rho0, all other ADOs zero
    Vector pack_initial(const Matrix& rho0) const;

    // largest tier-damping rate, for stiffness diagnostics (cm^-1)
    double max_damping() const { return max_damping_; }
    std::string stiffness_hint() const;

    std::size_t memory_bytes_per_state() const {
        return static_cast<std::size_t>(state_size()) * sizeof(Complex);
    }

private:
    void rhs_range(const Vector& y, Vector& dy, std::int64_t begin, std::int64_t end,
                   Matrix& scratch) const;

    Eigen::Index dim_ = 0;
    std::int64_t n_ado_ = 0;
    int n_slots_ = 0;
    int threads_ = 1;

    // sparse Hamiltonian, pre-scaled to rad/ps
    struct Triplet {
        int row, col;
        Complex value;
    };
    std::vector<Triplet> h_sparse_;

    std::vector<std::int64_t> raise_table_, lower_table_;
    std::vector<double> gamma_;     // per-ADO damping sum, rad/ps
    std::vector<Complex> up_coef_;  // -i * sqrt((n_ik+1)|c_ik|) * u, per [ado*slots+slot]
    std::vector<double> down_scale_; // sqrt(n_ik) * u, per [ado*slots+slot]

    Eigen::ArrayXd closure_;                 // per matrix entry, rad/ps
    std::vector<Eigen::ArrayXd> comm_mask_;  // per slot: s_i(a) - s_i(b)
    std::vector<Eigen::ArrayXcd> down_mask_; // per slot: -i(cl s_i(a) - conj(cl) s_i(b))
    double max_damping_ = 0.0;

    mutable std::vector<Matrix> scratch_;
};

} // namespace exvib
