#pragma once

#include <array>
#include <string>
#include <vector>

#include "hyperdimer/geometry.hpp"
#include "hyperdimer/height.hpp"
#include "hyperdimer/stats.hpp"
#include "hyperdimer/temperley.hpp"

namespace hyperdimer {

// Alternating cycles of the symmetric difference of two covers.  Loop i is a
// node cycle w0 b0 w1 b1 ... of even length >= 4 whose edges alternate between
// the covers.  Doubled edges (present in both covers) bound no region and are
// kept out of the loops.
struct LoopEnsemble {
  std::vector<std::vector<int>> loops;       // node cycles
  std::vector<std::vector<Cplx>> polygon;    // embedded cycle geometry
  std::vector<double> area;                  // signed polygon areas
  std::vector<std::array<int, 2>> doubled;   // (white, black) in both covers
  std::vector<int> loop_of_white;            // node -> loop id, -1 outside
  std::vector<std::array<int, 2>> loop_blacks;  // white -> its two cycle blacks

  int size() const { return static_cast<int>(loops.size()); }
};

LoopEnsemble symmetric_difference(const std::vector<int>& m1,
                                  const std::vector<int>& m2,
                                  const ExtendedGraph& eg);

// Bounded faces adjacent across shared edges; entries are (face, white, black).
struct FaceAdjacency {
  std::vector<std::vector<std::array<int, 3>>> nbr;
};
FaceAdjacency face_adjacency(const ExtendedGraph& eg);

// Loops enclosing exactly one of the two faces.  Inclusion is decided by the
// winding number of the embedded cycle around the face midpoints and,
// independently, by the crossing parity of a face path from f to f_prime; the
// two computations must agree on every loop.
struct SeparationReport {
  int count = 0;
  std::vector<int> loop_ids;
};
SeparationReport separating_loops(const LoopEnsemble& ens,
                                  const ExtendedGraph& eg,
                                  const FaceAdjacency& fa, int f, int f_prime);

// Pointwise h1 - h2; both fields must share the base face and target.
HeightField delta_height(const HeightField& h1, const HeightField& h2);

// The same field straight from the covers: increments are (w matched to b in
// m1) - (w matched to b in m2), so no reference flow enters and the values are
// exact integers.
HeightField delta_height(const std::vector<int>& m1, const std::vector<int>& m2,
                         const ExtendedGraph& eg);

// dh(f) - dh(f_prime) rounded to the integer it must be.
int integer_delta(const HeightField& dh, int f, int f_prime);

// One double-dimer observation at a face pair: the integer height difference
// and the number of separating loops.
struct LoopSample {
  int delta = 0;
  int loops = 0;
};

struct BernoulliStratum {
  int k = 0;                       // number of separating loops
  long long n = 0;                 // observations in the stratum
  std::vector<long long> counts;   // counts of delta = -k, -k+2, ..., k
  double chi_square = 0.0;
  double p_value = 1.0;            // against the sum of k fair signs
  bool skipped = false;            // fewer than min_stratum observations
};

struct BernoulliReport {
  std::vector<BernoulliStratum> strata;
  long long n = 0;
  double var_delta = 0.0;      // sample variance of delta
  double var_se = 0.0;         // moment-based standard error of the variance
  double mean_loops = 0.0;     // sample mean of the loop count
  double mean_loops_se = 0.0;
  double sign_chi_square = 0.0;  // pooled symmetry of delta vs -delta given k
  double sign_p_value = 1.0;
  int sign_dof = 0;
};

BernoulliReport verify_loop_bernoulli(const std::vector<LoopSample>& samples,
                                      long long min_stratum = 50);

struct ClusterReport {
  double k = 0.0;
  std::vector<std::vector<int>> components;        // faces with |h| > k
  std::vector<std::array<long long, 2>> histogram; // (size, count), ascending
  long long largest = 0;
};

ClusterReport height_clusters(const HeightField& field, const ExtendedGraph& eg,
                              double k);

struct TailRow {
  int k = 0;
  long long exceed = 0;  // observations with |h| > k
  long long n = 0;
  double p_hat = 0.0;
  Interval ci;           // Wilson score interval
  bool censored = false; // no exceedances observed
  bool has_loglog = false;
  double loglog = 0.0;   // log log(1 / p_hat) when 0 < p_hat < 1
};

struct TailReport {
  std::vector<TailRow> rows;        // k = -1, 0, 1, ...
  std::array<double, 4> moments{};  // E|h|^j, j = 1..4
  std::array<double, 4> moment_se{};
  long long n = 0;
  // Level fit on floor(|h|): exponential law exp(a k) against the extended
  // family exp(a k + b k^2), compared by likelihood ratio.
  bool fit_ok = false;
  double level_rate = 0.0;       // fitted a of the exponential law
  double level_curvature = 0.0;  // fitted b; negative means faster decay
  double lr_stat = 0.0;
  double exp_p_value = 1.0;      // small: single exponential rejected
  bool super_exponential = false;
};

TailReport tail_statistics(const std::vector<double>& values);
TailReport tail_statistics(const std::vector<HeightField>& fields,
                           const std::vector<int>& faces,
                           const ExtendedGraph& eg);

struct CorrelationReport {
  std::vector<int> faces;
  long long n = 0;
  double product_mean = 0.0;  // E[prod_i dh(f_i)]
  double se = 0.0;
  double min_separation = 0.0;
  bool skipped = false;       // separation precondition violated
};

// samples[s][i] holds the delta-height of sample s at faces[i].
CorrelationReport correlation_decay(const ExtendedGraph& eg,
                                    const std::vector<int>& faces, double eta,
                                    const std::vector<std::vector<double>>& samples);

struct LoopScaleReport {
  std::vector<double> max_diameter;  // per ensemble, 0 when empty
  std::vector<int> max_length;       // per ensemble, edges of the longest loop
  double median_max_diameter = 0.0;
  double mean_max_diameter = 0.0;
};

LoopScaleReport loop_length_statistics(const std::vector<LoopEnsemble>& ensembles);

std::string tail_to_csv(const TailReport& report);

}  // namespace hyperdimer
