#pragma once

#include <vector>

#include "sot/constants.hpp"
#include "sot/fields.hpp"
#include "sot/geometry.hpp"
#include "sot/rng.hpp"
#include "sot/vec3.hpp"

namespace sot {

struct IntegratorConfig {
    double dt = 1e-13;        // [s]
    bool renormalize = true;  // rescale |m| to 1 after every step
};

// Per-segment constants for the stepper hot loop.
struct LlgContext {
    Vec3 shape_ms;        // (Nxx, Nyy, Nzz) * Ms [A/m]
    double hk_coeff = 0;  // 2*Ku2/(mu0*Ms) [A/m]
    Vec3 h_applied;       // [A/m]
    double gamma_eff = 0;     // gamma/(1+alpha^2) [m/(A*s)]
    double alpha = 0;
    double torque_coeff = 0;  // 1/(q*Ns*(1+alpha^2)) [1/(A*s)]
    double noise_sigma = 0;   // thermal field std dev per component [A/m]
    double dt = 0;
    bool renormalize = true;
};

LlgContext make_llg_context(const MaterialParams& mat, const MagnetGeometry& g, const DemagTensor& n,
                            const Vec3& h_applied, const IntegratorConfig& cfg);

// Landau-Lifshitz form of the damped precession plus spin-transfer torque:
//   dm/dt = -gamma' m x H - gamma' alpha m x (m x H)
//           + (1/(q Ns (1+a^2))) [ m x (Is x m) + alpha (m x Is) ]
// with gamma' = gamma/(1+alpha^2). h_fluct carries applied + thermal field,
// constant within a step; the m-dependent fields are re-evaluated here so the
// corrector stage sees them at the predicted state.
inline Vec3 llg_rhs(const Vec3& m, const Vec3& h_fluct, const Vec3& i_s, const LlgContext& c) {
    const Vec3 h{-c.shape_ms.x * m.x + h_fluct.x,
                 -c.shape_ms.y * m.y + h_fluct.y,
                 (c.hk_coeff - c.shape_ms.z) * m.z + h_fluct.z};
    const Vec3 mxh = cross(m, h);
    const Vec3 mxmxh = cross(m, mxh);
    Vec3 dm = (-c.gamma_eff) * mxh - (c.gamma_eff * c.alpha) * mxmxh;
    const Vec3 ixm = cross(i_s, m);
    dm += c.torque_coeff * (cross(m, ixm) + c.alpha * cross(m, i_s));
    return dm;
}

// One stochastic Heun step (Stratonovich): predictor renormalized before the
// corrector stage evaluates the drift. Returns | |m|-1 | before the final
// renormalization; m is updated in place.
inline double heun_step(Vec3& m, const Vec3& h_fluct, const Vec3& i_s, const LlgContext& c) {
    const Vec3 k1 = llg_rhs(m, h_fluct, i_s, c);
    const Vec3 mp = (m + c.dt * k1).normalized();
    const Vec3 k2 = llg_rhs(mp, h_fluct, i_s, c);
    m += (0.5 * c.dt) * (k1 + k2);
    const double nrm = m.norm();
    const double err = std::abs(nrm - 1.0);
    if (c.renormalize) m *= 1.0 / nrm;
    return err;
}

// Single public step: draws the thermal field (one realization per step) and
// advances m. rng may be null only when the context is noiseless.
double llg_step(Vec3& m, const Vec3& i_s, const LlgContext& c, RandomStream* rng);

struct TrajectorySample {
    double t = 0;  // [s]
    Vec3 m;
};

// Strided sampler; always keeps the step-0 state when fed from step 0.
class TrajectoryRecorder {
  public:
    explicit TrajectoryRecorder(long stride) : stride_(stride > 0 ? stride : 1) {}

    void record(long global_step, double t, const Vec3& m) {
        if (global_step % stride_ == 0) samples_.push_back({t, m});
    }
    void force_record(double t, const Vec3& m) { samples_.push_back({t, m}); }

    const std::vector<TrajectorySample>& samples() const { return samples_; }
    long stride() const { return stride_; }

  private:
    long stride_;
    std::vector<TrajectorySample> samples_;
};

struct SegmentStats {
    double max_prenorm_error = 0;
    long steps = 0;
};

// Advances m by `steps` steps under a constant spin current. Throws
// SimulationDiverged with the global step index if the state leaves IEEE
// range. step_offset/t0 keep indices and times global across segments.
void run_segment(Vec3& m, const Vec3& i_s, long steps, const LlgContext& c, RandomStream* rng,
                 SegmentStats& stats, TrajectoryRecorder* rec = nullptr, long step_offset = 0,
                 double t0 = 0.0);

}  // namespace sot
