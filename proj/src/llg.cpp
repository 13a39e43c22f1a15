#include "sot/llg.hpp"

#include <string>

#include "sot/errors.hpp"

namespace sot {

LlgContext make_llg_context(const MaterialParams& mat, const MagnetGeometry& g, const DemagTensor& n,
                            const Vec3& h_applied, const IntegratorConfig& cfg) {
    mat.validate();
    g.validate();
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("integrator: dt must be positive");

    LlgContext c;
    c.shape_ms = {n.nxx * mat.ms, n.nyy * mat.ms, n.nzz * mat.ms};
    c.hk_coeff = 2.0 * mat.ku2 / (kConst.mu0 * mat.ms);
    c.h_applied = h_applied;
    const double a2 = 1.0 + mat.alpha * mat.alpha;
    c.gamma_eff = kConst.gamma / a2;
    c.alpha = mat.alpha;
    c.torque_coeff = 1.0 / (kConst.q_e * mat.spin_count(g) * a2);
    c.noise_sigma = thermal_sigma(mat, g, cfg.dt);
    c.dt = cfg.dt;
    c.renormalize = cfg.renormalize;
    return c;
}

double llg_step(Vec3& m, const Vec3& i_s, const LlgContext& c, RandomStream* rng) {
    Vec3 h = c.h_applied;
    if (c.noise_sigma > 0.0) {
        h.x += c.noise_sigma * rng->gaussian();
        h.y += c.noise_sigma * rng->gaussian();
        h.z += c.noise_sigma * rng->gaussian();
    }
    return heun_step(m, h, i_s, c);
}

void run_segment(Vec3& m, const Vec3& i_s, long steps, const LlgContext& c, RandomStream* rng,
                 SegmentStats& stats, TrajectoryRecorder* rec, long step_offset, double t0) {
    const bool noisy = c.noise_sigma > 0.0;
    for (long i = 0; i < steps; ++i) {
        if (rec) rec->record(step_offset + i, t0 + i * c.dt, m);
        Vec3 h = c.h_applied;
        if (noisy) {
            h.x += c.noise_sigma * rng->gaussian();
            h.y += c.noise_sigma * rng->gaussian();
            h.z += c.noise_sigma * rng->gaussian();
        }
        const double err = heun_step(m, h, i_s, c);
        if (err > stats.max_prenorm_error) stats.max_prenorm_error = err;
        if (!m.finite())
            throw SimulationDiverged(
                "magnetization left IEEE range at step " + std::to_string(step_offset + i),
                step_offset + i);
    }
    stats.steps += steps;
}

}  // namespace sot
