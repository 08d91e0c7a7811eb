#pragma once

#include <cstddef>
#include <vector>

#include "oplab/config.hpp"
#include "oplab/matrix.hpp"

namespace oplab {

// Everything here lives on a finite window of blocks. `finite` means the
// operator is the whole story; `truncated_l2` means it is the compression of
// an operator on a one-sided sequence space, and identities involving the cut
// edge only hold away from the last `guard` blocks.
enum class AmbientKind { finite, truncated_l2 };

struct Ambient {
    AmbientKind kind = AmbientKind::finite;
    std::size_t block_dim = 1;
    std::size_t blocks = 1;
    std::size_t guard = 0;

    std::size_t dim() const { return block_dim * blocks; }
    void validate() const;
};

struct WindowedOperator {
    ComplexMatrix matrix;
    Ambient ambient;
};

// Zero the rows and columns belonging to the guard blocks at the window edge.
ComplexMatrix project_to_window(const ComplexMatrix& m, const Ambient& a);

// Weight sequence for weighted shifts: beta(0) = 1, beta(n+1) = beta(n) * omega_n.
class BetaSequence {
  public:
    static BetaSequence from_weights(std::vector<double> w);
    static BetaSequence constant(std::size_t count, double w = 1.0);
    static BetaSequence geometric(std::size_t count, double base);

    double beta(std::size_t n) const;
    double omega(std::size_t n) const;
    std::size_t levels() const { return products_.size(); }

    // sup over k of beta(k+n)/beta(k); the power norm of the shift on the window.
    double window_ratio_sup(std::size_t n) const;

    const std::vector<double>& weights() const { return weights_; }

  private:
    std::vector<double> weights_;
    std::vector<double> products_;
};

// Forward shift by one block on blocks 0..N-1; isometric except into the cut.
WindowedOperator truncated_shift(std::size_t block_dim, std::size_t blocks);

struct WeightedShift {
    WindowedOperator op;
    BetaSequence beta;
    std::size_t block_dim = 1;
    std::size_t blocks = 1;
};

// Block (n+1, n) carries omega_n * I. Needs at least blocks-1 weights.
WeightedShift weighted_shift(const BetaSequence& beta, std::size_t block_dim,
                             std::size_t blocks);

// L with block (n, n+1) = (1/omega_n) I; L S = I away from the last block and
// S L S = S exactly.
ComplexMatrix left_inverse(const WeightedShift& s);

// Two-by-two block upper triangular operator [[T, X], [0, V]].
struct BlockUpper {
    ComplexMatrix t;
    ComplexMatrix x;
    ComplexMatrix v;

    void validate() const;
    ComplexMatrix assemble() const;
    static BlockUpper split(const ComplexMatrix& m, std::size_t top_rows);
};

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

// Upper-right block of the n-th power of the assembled operator:
// sum_{j<n} T^j X V^{n-1-j}. n = 0 gives the zero block.
ComplexMatrix coupling_sum(const BlockUpper& r, std::size_t n);

enum class GrowthClass { bounded, linear, exponential, inconclusive };

const char* growth_name(GrowthClass g);

struct PowerProfile {
    std::vector<double> norms;  // |T^n| for n = 1..n_max
    GrowthClass growth = GrowthClass::inconclusive;
    double fit_slope = 0.0;  // least squares slope of log|T^n| against log n
    double fit_rate = 0.0;   // least squares rate of log|T^n| against n
    bool overflow = false;
};

// Classify a norm sequence (index n = 1, 2, ...) as bounded, linear, or
// exponential from two least squares fits on the tail n >= 3.
GrowthClass classify_growth(const std::vector<double>& norms, double* slope_out,
                            double* rate_out);

PowerProfile power_profile(const ComplexMatrix& t, std::size_t n_max,
                           const ToleranceConfig& cfg = {});

struct StructureReport {
    double norm = 0.0;
    double isometry_defect = 0.0;    // |P (T*T - I) P| with P the window projection
    double coisometry_defect = 0.0;  // |P (TT* - I) P|
    bool isometry_on_window = false;
    bool coisometry_on_window = false;
    bool unitary_on_window = false;
    bool contraction = false;
};

StructureReport analyze_structure(const WindowedOperator& w,
                                  const ToleranceConfig& cfg = {});

}  // namespace oplab
