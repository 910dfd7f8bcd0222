#pragma once

// Compactness moduli, constructive epsilon-nets, cover certification, the
// necessity check and the componentwise reduction for sampled families.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mwkr/error.hpp"
#include "mwkr/fields.hpp"
#include "mwkr/operators.hpp"
#include "mwkr/space.hpp"
#include "mwkr/weights.hpp"

namespace mwkr {

/// A nonempty finite family of fields on one grid with one component count.
class FunctionFamily {
 public:
  FunctionFamily(std::vector<SampledVectorField> members, std::string description);

  const Grid& grid() const noexcept { return members_.front().grid(); }
  int dim() const noexcept { return members_.front().dim(); }
  std::size_t size() const noexcept { return members_.size(); }
  const SampledVectorField& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<SampledVectorField>& members() const noexcept { return members_; }
  const std::string& description() const noexcept { return description_; }

 private:
  std::vector<SampledVectorField> members_;
  std::string description_;
};

struct BumpOptions {
  int count = 40;
  double center_min = -1.0;
  double center_max = 1.0;
  double width_min = 1.0;
  double width_max = 2.0;
};

/// f_k(x) = a_k exp(-|x - c_k|^2 / (2 w_k^2)) with a_k a random unit vector in
/// C^d, c_k uniform in [center_min, center_max]^n, w_k uniform in
/// [width_min, width_max]. Draws come from mt19937_64(seed).
FunctionFamily gaussian_bumps(const Grid& grid, int dim, std::uint64_t seed, const BumpOptions& options = {});

using Curve = std::vector<std::pair<double, double>>;

struct Ladders {
  std::vector<double> radii;   ///< tail radii R
  std::vector<double> scales;  ///< equicontinuity scales r
};

/// R in {L/8, L/4, L/2, 3L/4}; scales 2h, 4h, ... up to L/4.
Ladders default_ladders(const Grid& grid);

enum class EquicontinuityNotion { translation, twisted, averaging };
std::string_view to_string(EquicontinuityNotion notion);

struct ModuliReport {
  double bound = 0.0;
  Curve tail;
  Curve equicontinuity;
  EquicontinuityNotion notion = EquicontinuityNotion::translation;
  std::string gauge;  ///< "norm" or "modular"
};

/// sup_f gauge(f).
double boundedness_modulus(const FunctionFamily& family, const FunctionSpace& space);

/// sup_f gauge(f chi_{|x| >= R}). Throws RadiusExceedsBox unless R < L.
double tail_modulus(const FunctionFamily& family, double radius, const FunctionSpace& space);

/// sup_f gauge(f chi_{outside R_m}) for R_m = [-2^m, 2^m)^n.
double cube_tail_modulus(const FunctionFamily& family, int m, const FunctionSpace& space);

/// sup_f max_{lattice y, 0 < |y| <= r} gauge(tau_y f - f).
double translation_modulus(const FunctionFamily& family, double r, const FunctionSpace& space);

/// translation_modulus at every scale (ascending), computing each shift once.
/// Stops after the first scale whose value reaches `stop_at`.
Curve translation_curve(const FunctionFamily& family, const std::vector<double>& scales, const FunctionSpace& space,
                        double stop_at = std::numeric_limits<double>::infinity());

/// Members rotated into the eigenbasis of W: f~ = U^H f.
FunctionFamily eigenbasis_family(const FunctionFamily& family, const MatrixWeightField& w);

/// sup_f max_{|y| <= r} ||tau_y f~ - f~||_{L^p(D)} with W = U D U^H. Throws NotInvertible.
double twisted_modulus(const FunctionFamily& family, const MatrixWeightField& w, double p, double r,
                       Backend backend = Backend::openmp);
Curve twisted_curve(const FunctionFamily& family, const MatrixWeightField& w, double p,
                    const std::vector<double>& scales, Backend backend = Backend::openmp,
                    double stop_at = std::numeric_limits<double>::infinity());

/// Cells with |x| < L - r, where every ball B(x, r) lies inside the box.
std::vector<std::uint8_t> safe_region(const Grid& grid, double r);

/// sup_f gauge((S_r f - f) chi_{|x| < L - r}) with S_r taken against the
/// space measure (Lebesgue when it has none).
double averaging_modulus(const FunctionFamily& family, double r, const FunctionSpace& space);

ModuliReport compute_moduli(const FunctionFamily& family, const FunctionSpace& space, const Ladders& ladders,
                            EquicontinuityNotion notion, const MatrixWeightField* w = nullptr);

struct NetCertificate {
  double epsilon = 0.0;
  double c_net = 1.0;
  std::vector<std::size_t> nearest;
  std::vector<double> distance;
  double worst_distance = 0.0;
  std::size_t worst_member = 0;
  bool pass = false;
};

struct EpsilonNet {
  double epsilon = 0.0;
  std::string route;  ///< "dyadic" or "average"
  std::vector<SampledVectorField> centers;
  std::vector<std::size_t> center_members;  ///< member each center was built from
  double c_net = 1.0;
  NetCertificate certificate;

  // Dyadic route.
  int outer_generation = 0;
  int inner_generation = 0;
  double tail_at_m = 0.0;
  double modulus_at_t = 0.0;
  double approximation_error = 0.0;  ///< max_f dist(f, Phi f)

  // Average route.
  double radius = 0.0;        ///< R
  double ball_radius = 0.0;   ///< r
  double tail_at_r = 0.0;     ///< tail(R), budget eps/3
  double average_at_r = 0.0;  ///< averaging modulus(r), budget eps/3
  double scaling = 0.0;       ///< A = 3 (int_{B(0,R)} c(x)^p dmu)^{1/p}
  double cluster_radius = 0.0;
  double uniform_spread = 0.0;  ///< max uniform distance of an S_r f to its center
  double budget_bound = 0.0;    ///< tail + average + (A / 3) * uniform_spread
};

/// Greedy farthest-point cover of points given by a distance oracle; the first
/// center is point 0, ties go to the lowest index. Returns the center indices
/// and each point's nearest center and distance.
struct GreedyCover {
  std::vector<std::size_t> centers;
  std::vector<std::size_t> nearest;
  std::vector<double> distance;
};

template <class Distance>
GreedyCover greedy_cover(std::size_t count, double radius, Distance&& dist, std::size_t cap = SIZE_MAX);

/// Dyadic route: m from the cube-tail ladder, t from the
/// translation (or twisted, when `w` is given) ladder, greedy cover of the
/// Phi images. Throws ModuliTooLarge if no (m, t) qualifies.
EpsilonNet build_net_dyadic(const FunctionFamily& family, double epsilon, const FunctionSpace& space,
                            const MatrixWeightField* twisted_weight = nullptr);

/// Ball-average route with eps/3 budgets. Requires p >= 1 and pointwise norm
/// bounds. Throws ModuliTooLarge if no (R, r) qualifies.
EpsilonNet build_net_average(const FunctionFamily& family, double epsilon, const FunctionSpace& space);

/// Brute-force sup_f min_k dist(f, g_k); passes iff <= C_net * eps.
NetCertificate certify_net(const FunctionFamily& family, const std::vector<SampledVectorField>& centers,
                           double epsilon, double c_net, const FunctionSpace& space);

struct NecessityRow {
  double epsilon = 0.0;
  std::size_t net_size = 0;
  double radius = 0.0;      ///< R = max_k R_k
  double ball_radius = 0.0; ///< r = min_k r_k
  double tail = 0.0;        ///< tail_modulus(F, R)
  double tail_bound = 0.0;  ///< 2 eps
  double average = 0.0;     ///< averaging_modulus(F, r)
  double averaging_constant = 0.0;  ///< measured max ||S_r (f - f_k)|| / ||f - f_k||
  double average_bound = 0.0;   ///< (C + 2) eps
  bool pass = false;
  std::string note;
};

struct NecessityReport {
  std::vector<NecessityRow> rows;
  bool pass = true;
};

/// Necessity direction on a finite family: from a greedy net derive R and r and
/// bound the tail and averaging moduli. Throws
/// NotTotallyBoundedInput if a greedy cover needs more than `cap` centers.
NecessityReport necessity_check(const FunctionFamily& family, const std::vector<double>& epsilons,
                                const FunctionSpace& space, std::size_t cap = 100000);

struct ComponentReduction {
  std::vector<ScalarWeightField> weights;  ///< lambda_i
  std::vector<FunctionFamily> components;  ///< f~_i as d = 1 families
  std::vector<double> full_norms;          ///< ||f~||_{L^p(D)} per member
  std::vector<std::vector<double>> component_norms;  ///< ||f~_i||_{L^p(lambda_i)}
  double lower_constant = 0.0;  ///< min full / sum
  double upper_constant = 0.0;  ///< max full / sum
  double pythagorean_residual = 0.0;  ///< p = 2 only: max |full^2 - sum_i n_i^2| / full^2
};

ComponentReduction componentwise_reduction(const FunctionFamily& family, const MatrixWeightField& w, double p,
                                           Backend backend = Backend::openmp);

template <class Distance>
GreedyCover greedy_cover(std::size_t count, double radius, Distance&& dist, std::size_t cap) {
  GreedyCover out;
  out.nearest.assign(count, 0);
  out.distance.assign(count, std::numeric_limits<double>::infinity());
  if (count == 0) return out;
  std::size_t next = 0;
  while (true) {
    require(out.centers.size() < cap, ErrorCode::NotTotallyBoundedInput, "greedy cover exceeded the center cap");
    const std::size_t c = out.centers.size();
    out.centers.push_back(next);
    std::vector<double> fresh(count);
    for_each_index(Backend::openmp, count, [&](std::size_t i) { fresh[i] = i == next ? 0.0 : dist(i, next); });
    for (std::size_t i = 0; i < count; ++i) {
      if (fresh[i] < out.distance[i]) {
        out.distance[i] = fresh[i];
        out.nearest[i] = c;
      }
    }
    std::size_t far = 0;
    for (std::size_t i = 1; i < count; ++i)
      if (out.distance[i] > out.distance[far]) far = i;
    if (out.distance[far] <= radius) break;
    next = far;
  }
  return out;
}

}  // namespace mwkr
