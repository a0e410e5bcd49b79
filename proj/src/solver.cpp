#include "kinecell/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>

namespace kinecell {

// ---------------------------------------------------------------------------
// Diffuse wall state
// ---------------------------------------------------------------------------

WallDistribution wall_distribution(std::span<const double> f_row, const VelocityGrid& grid,
                                   const Vec2& u_w, double T_w, const Vec2& n_w, double R) {
    if (!(T_w > 0.0)) throw ConfigError("wall temperature must be positive");
    const int np = grid.count();
    WallDistribution out;
    out.f_w.resize(static_cast<size_t>(np));
    out.g_w.resize(static_cast<size_t>(np));

    reduced_maxwellian(1.0, u_w, T_w, R, grid, out.f_w);  // unit-density emission shape

    const double w = grid.weight();
    double outflux = 0.0, influx_unit = 0.0;
    for (int p = 0; p < np; ++p) {
        const double vn = (grid.vx[static_cast<size_t>(p)] - u_w.x()) * n_w.x() +
                          (grid.vy[static_cast<size_t>(p)] - u_w.y()) * n_w.y();
        if (vn > 0.0)
            outflux += vn * f_row[static_cast<size_t>(p)] * w;
        else if (vn < 0.0)
            influx_unit += vn * out.f_w[static_cast<size_t>(p)] * w;
    }
    if (!(influx_unit < 0.0))
        throw ConfigError("velocity grid has no incoming nodes along the wall normal");
    out.rho_w = -outflux / influx_unit;

    const double gscale = 0.5 * R * T_w;
    for (int p = 0; p < np; ++p) {
        out.f_w[static_cast<size_t>(p)] *= out.rho_w;
        out.g_w[static_cast<size_t>(p)] = gscale * out.f_w[static_cast<size_t>(p)];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Solver::Solver(const ScenarioSpec& spec)
    : sgrid_(build_space_grid(spec.x_min, spec.x_max, spec.nx, spec.ny)),
      vgrid_(symmetric_velocity_grid(spec.v_half_span, spec.nvel)),
      gas_(spec.gas),
      bc_(spec.bc),
      body_(spec.body),
      integrator_(spec.integrator),
      cfl_mode_(spec.cfl_mode),
      cfl_c_(spec.cfl_c) {
    spec.validate();
    nv_ = vgrid_.count();

    vx_pos_.resize(static_cast<size_t>(nv_));
    vx_neg_.resize(static_cast<size_t>(nv_));
    vy_pos_.resize(static_cast<size_t>(nv_));
    vy_neg_.resize(static_cast<size_t>(nv_));
    for (int p = 0; p < nv_; ++p) {
        vx_pos_[static_cast<size_t>(p)] = std::max(vgrid_.vx[static_cast<size_t>(p)], 0.0);
        vx_neg_[static_cast<size_t>(p)] = std::min(vgrid_.vx[static_cast<size_t>(p)], 0.0);
        vy_pos_[static_cast<size_t>(p)] = std::max(vgrid_.vy[static_cast<size_t>(p)], 0.0);
        vy_neg_[static_cast<size_t>(p)] = std::min(vgrid_.vy[static_cast<size_t>(p)], 0.0);
    }
    if (std::holds_alternative<SpecularYBC>(bc_.at(Side::Bottom)) ||
        std::holds_alternative<SpecularYBC>(bc_.at(Side::Top)))
        mirror_vy_ = vgrid_.mirror_vy();

    st_.body = spec.body0;
    const LevelSetField ls = sample_body_levelset(st_.body);
    st_.geom_now = build_geometry(ls, sgrid_);
    st_.geom_next = st_.geom_now;

    const int nc = sgrid_.cell_count();
    st_.field.resize(nc, nv_);
    std::vector<double> f0(static_cast<size_t>(nv_)), g0(static_cast<size_t>(nv_));
    reduced_maxwellian(spec.rho0, spec.u0, spec.T0, gas_.R, vgrid_, f0);
    for (int p = 0; p < nv_; ++p)
        g0[static_cast<size_t>(p)] = 0.5 * gas_.R * spec.T0 * f0[static_cast<size_t>(p)];
    for (int c = 0; c < nc; ++c) {
        if (st_.geom_now[static_cast<size_t>(c)].type == CellType::Solid) continue;
        std::copy(f0.begin(), f0.end(), st_.field.f_row(c).begin());
        std::copy(g0.begin(), g0.end(), st_.field.g_row(c).begin());
    }

    hat_f_.assign(static_cast<size_t>(nc) * nv_, 0.0);
    hat_g_.assign(static_cast<size_t>(nc) * nv_, 0.0);
    new_f_.assign(static_cast<size_t>(nc) * nv_, 0.0);
    new_g_.assign(static_cast<size_t>(nc) * nv_, 0.0);
    wall_row_of_cell_.assign(static_cast<size_t>(nc), -1);

    ensure_merged();
}

LevelSetField Solver::sample_body_levelset(const RigidBodyState& pose) const {
    return sample_levelset([this, &pose](const Vec2& x) { return body_->levelset(x, pose); },
                           sgrid_);
}

// ---------------------------------------------------------------------------
// Merge (step 2) and the t^n equilibrium cache
// ---------------------------------------------------------------------------

void Solver::merge_to_control_volumes() { ensure_merged(); }

void Solver::ensure_merged() {
    if (merged_fresh_) return;
    const LevelSetField ls = sample_body_levelset(st_.body);
    st_.cv = accumulate_control_volumes(st_.geom_now, ls, sgrid_);

    const int nmaster = static_cast<int>(st_.cv.masters.size());
#pragma omp parallel for schedule(static)
    for (int s = 0; s < nmaster; ++s) {
        const int m = st_.cv.masters[static_cast<size_t>(s)];
        double* hf = hat_f_.data() + static_cast<size_t>(m) * nv_;
        double* hg = hat_g_.data() + static_cast<size_t>(m) * nv_;
        const int b = st_.cv.member_begin[static_cast<size_t>(s)];
        const int e = st_.cv.member_begin[static_cast<size_t>(s) + 1];
        if (e - b == 1) {
            // Singleton sets keep their value exactly.
            std::memcpy(hf, st_.field.f_row(m).data(), sizeof(double) * static_cast<size_t>(nv_));
            std::memcpy(hg, st_.field.g_row(m).data(), sizeof(double) * static_cast<size_t>(nv_));
            continue;
        }
        std::fill(hf, hf + nv_, 0.0);
        std::fill(hg, hg + nv_, 0.0);
        double area = 0.0;
        for (int k = b; k < e; ++k) {
            const int c = st_.cv.member_cells[static_cast<size_t>(k)];
            const double a = st_.geom_now[static_cast<size_t>(c)].area;
            area += a;
            const double* cf = st_.field.f.data() + static_cast<size_t>(c) * nv_;
            const double* cg = st_.field.g.data() + static_cast<size_t>(c) * nv_;
            for (int p = 0; p < nv_; ++p) {
                hf[p] += a * cf[p];
                hg[p] += a * cg[p];
            }
        }
        const double inv = 1.0 / area;
        for (int p = 0; p < nv_; ++p) {
            hf[p] *= inv;
            hg[p] *= inv;
        }
    }

    // Keep the audit usable between merge and the dt pre-pass.
    st_.cv_area_next = st_.cv.cv_area;
    merged_fresh_ = true;
    master_params_fresh_ = false;
}

void Solver::ensure_master_params() {
    if (master_params_fresh_) return;
    ensure_merged();
    const int nmaster = static_cast<int>(st_.cv.masters.size());
    master_params_.assign(static_cast<size_t>(nmaster), {});
    master_tau_.assign(static_cast<size_t>(nmaster), 0.0);

    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 64)
    for (int s = 0; s < nmaster; ++s) {
        try {
            const int m = st_.cv.masters[static_cast<size_t>(s)];
            const MacroFields mac = compute_moments(hat_f_row(m), hat_g_row(m), vgrid_, gas_.R);
            master_tau_[static_cast<size_t>(s)] = relaxation_time(mac, gas_);
            if (integrator_ == TimeIntegrator::Explicit) {
                thread_local std::vector<double> feq, geq;
                feq.resize(static_cast<size_t>(nv_));
                geq.resize(static_cast<size_t>(nv_));
                master_params_[static_cast<size_t>(s)] =
                    conservative_equilibrium_pair(hat_f_row(m), hat_g_row(m), vgrid_, gas_, feq, geq);
            }
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    master_params_fresh_ = true;
}

// ---------------------------------------------------------------------------
// Time step control (section 3.4.1)
// ---------------------------------------------------------------------------

double Solver::cfl_timestep() {
    if (forced_dt_ > 0.0) return forced_dt_;
    const Vec2 vmax = vgrid_.max_abs();
    if (cfl_mode_ == CflMode::Relaxed)
        return cfl_c_ / (vmax.x() / sgrid_.dx + vmax.y() / sgrid_.dy);

    ensure_merged();
    double inv_tau_max = 0.0;
    if (integrator_ == TimeIntegrator::Explicit) {
        ensure_master_params();
        for (double tau : master_tau_) inv_tau_max = std::max(inv_tau_max, 1.0 / tau);
    }

    // Outflow sum phi per control volume and velocity.
    std::vector<double> phi(static_cast<size_t>(nv_));
    double ratio_max = 0.0;
    const int nmaster = static_cast<int>(st_.cv.masters.size());
    for (int s = 0; s < nmaster; ++s) {
        const int m = st_.cv.masters[static_cast<size_t>(s)];
        std::fill(phi.begin(), phi.end(), 0.0);
        for (int k = st_.cv.member_begin[static_cast<size_t>(s)];
             k < st_.cv.member_begin[static_cast<size_t>(s) + 1]; ++k) {
            const int c = st_.cv.member_cells[static_cast<size_t>(k)];
            const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(c)];
            for (int p = 0; p < nv_; ++p)
                phi[static_cast<size_t>(p)] +=
                    g.lxp() * vx_pos_[static_cast<size_t>(p)] -
                    g.lxm() * vx_neg_[static_cast<size_t>(p)] +
                    g.lyp() * vy_pos_[static_cast<size_t>(p)] -
                    g.lym() * vy_neg_[static_cast<size_t>(p)];
            if (g.type == CellType::Cut) {
                const Vec2 wvec(g.lxm() - g.lxp(), g.lym() - g.lyp());
                const Vec2 u_w = body_->wall_velocity_at(g.x_w, st_.body);
                for (int p = 0; p < nv_; ++p) {
                    const double wn = (vgrid_.vx[static_cast<size_t>(p)] - u_w.x()) * wvec.x() +
                                      (vgrid_.vy[static_cast<size_t>(p)] - u_w.y()) * wvec.y();
                    if (wn > 0.0) phi[static_cast<size_t>(p)] += wn;
                }
            }
        }
        const double invS = 1.0 / st_.cv.cv_area[static_cast<size_t>(m)];
        for (int p = 0; p < nv_; ++p)
            ratio_max = std::max(ratio_max, phi[static_cast<size_t>(p)] * invS);
    }
    return (1.0 - 1e-10) / (inv_tau_max + ratio_max);
}

void Solver::choose_dt_and_next_geometry() {
    double dt = cfl_timestep();
    for (int attempt = 0;; ++attempt) {
        pending_body_ = advance_body(st_.body, Vec2::Zero(), 0.0, dt);
        const LevelSetField ls = sample_body_levelset(pending_body_);
        st_.geom_next = build_geometry(ls, sgrid_);

        st_.cv_area_next.assign(static_cast<size_t>(sgrid_.cell_count()), 0.0);
        bool ok = true;
        for (size_t s = 0; s < st_.cv.masters.size(); ++s) {
            const int m = st_.cv.masters[s];
            double area = 0.0;
            for (int k = st_.cv.member_begin[s]; k < st_.cv.member_begin[s + 1]; ++k)
                area += st_.geom_next[static_cast<size_t>(st_.cv.member_cells[static_cast<size_t>(k)])].area;
            st_.cv_area_next[static_cast<size_t>(m)] = area;
            if (!(area > 0.0)) ok = false;
        }
        if (ok) break;
        if (attempt >= 10)
            throw GeometryError("a control volume vanished within one step even at dt/1024");
        dt *= 0.5;
    }
    st_.dt = dt;
}

// ---------------------------------------------------------------------------
// Wall rows (step 4) and loads (step 5)
// ---------------------------------------------------------------------------

void Solver::build_wall_rows() {
    wall_rows_.clear();
    std::fill(wall_row_of_cell_.begin(), wall_row_of_cell_.end(), -1);
    const int nc = sgrid_.cell_count();
    for (int c = 0; c < nc; ++c) {
        const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(c)];
        if (g.type != CellType::Cut) continue;
        WallRow row;
        row.cell = c;
        row.u_w = body_->wall_velocity_at(g.x_w, st_.body);
        row.T_w = body_->wall_temperature(g.x_w, st_.body);
        row.dynamic = body_->wall_is_dynamic(g.x_w, st_.body);
        const int m = st_.cv.master[static_cast<size_t>(c)];
        WallDistribution wd =
            wall_distribution(hat_f_row(m), vgrid_, row.u_w, row.T_w, g.n_w, gas_.R);
        row.rho_w = wd.rho_w;
        row.f_w = std::move(wd.f_w);
        row.g_w = std::move(wd.g_w);
        row.wn.resize(static_cast<size_t>(nv_));
        const Vec2 wvec(g.lxm() - g.lxp(), g.lym() - g.lyp());
        for (int p = 0; p < nv_; ++p)
            row.wn[static_cast<size_t>(p)] =
                (vgrid_.vx[static_cast<size_t>(p)] - row.u_w.x()) * wvec.x() +
                (vgrid_.vy[static_cast<size_t>(p)] - row.u_w.y()) * wvec.y();
        wall_row_of_cell_[static_cast<size_t>(c)] = static_cast<int>(wall_rows_.size());
        wall_rows_.push_back(std::move(row));
    }
}

void Solver::compute_loads_and_advance(RigidBodyState& next) {
    st_.last_force = Vec2::Zero();
    st_.last_torque = 0.0;
    if (st_.body.mode == MotionMode::Prescribed) return;

    std::vector<WallPatch> patches;
    patches.reserve(wall_rows_.size());
    for (const WallRow& row : wall_rows_) {
        if (!row.dynamic) continue;
        const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(row.cell)];
        const int m = st_.cv.master[static_cast<size_t>(row.cell)];
        WallPatch patch;
        patch.stress = wall_stress(hat_f_row(m), row.f_w, vgrid_, row.u_w, g.n_w);
        patch.n_w = g.n_w;
        patch.x_w = g.x_w;
        patch.Lw = g.Lw;
        patches.push_back(patch);
    }
    const WallLoad load = force_and_torque(patches, st_.body.x_c);
    st_.last_force = load.force;
    st_.last_torque = load.torque;
    next = advance_body(st_.body, load.force, load.torque, st_.dt);
}

// ---------------------------------------------------------------------------
// Domain boundaries
// ---------------------------------------------------------------------------

void Solver::build_ghosts() {
    const int nx = sgrid_.nx, ny = sgrid_.ny;
    const int len[4] = {ny, ny, nx, nx};
    for (int side = 0; side < 4; ++side) {
        ghost_f_[side].assign(static_cast<size_t>(len[side]) * nv_, 0.0);
        ghost_g_[side].assign(static_cast<size_t>(len[side]) * nv_, 0.0);
    }

    auto fill_from_master = [&](int side, int k, int cell) {
        const int m = st_.cv.master[static_cast<size_t>(cell)];
        if (m < 0) return;
        std::memcpy(ghost_f_[side].data() + static_cast<size_t>(k) * nv_,
                    hat_f_row(m).data(), sizeof(double) * static_cast<size_t>(nv_));
        std::memcpy(ghost_g_[side].data() + static_cast<size_t>(k) * nv_,
                    hat_g_row(m).data(), sizeof(double) * static_cast<size_t>(nv_));
    };

    static const Vec2 outward[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    for (int side = 0; side < 4; ++side) {
        const SideBC& bcv = bc_.side[side];
        for (int k = 0; k < len[side]; ++k) {
            // Interior cell adjacent to this ghost slot.
            int i = 0, j = 0;
            switch (static_cast<Side>(side)) {
                case Side::Left: i = 0; j = k; break;
                case Side::Right: i = nx - 1; j = k; break;
                case Side::Bottom: i = k; j = 0; break;
                case Side::Top: i = k; j = ny - 1; break;
            }
            const int cell = sgrid_.cell_index(i, j);
            if (st_.geom_now[static_cast<size_t>(cell)].type == CellType::Solid) continue;

            if (std::holds_alternative<PeriodicBC>(bcv)) {
                const int oi = side == 0 ? nx - 1 : (side == 1 ? 0 : i);
                const int oj = side == 2 ? ny - 1 : (side == 3 ? 0 : j);
                fill_from_master(side, k, sgrid_.cell_index(oi, oj));
            } else if (std::holds_alternative<NeumannCopyBC>(bcv)) {
                fill_from_master(side, k, cell);
            } else if (std::holds_alternative<SpecularYBC>(bcv)) {
                const int m = st_.cv.master[static_cast<size_t>(cell)];
                const auto hf = hat_f_row(m);
                const auto hg = hat_g_row(m);
                double* gf = ghost_f_[side].data() + static_cast<size_t>(k) * nv_;
                double* gg = ghost_g_[side].data() + static_cast<size_t>(k) * nv_;
                for (int p = 0; p < nv_; ++p) {
                    gf[p] = hf[static_cast<size_t>(mirror_vy_[static_cast<size_t>(p)])];
                    gg[p] = hg[static_cast<size_t>(mirror_vy_[static_cast<size_t>(p)])];
                }
            } else if (const auto* dw = std::get_if<DiffuseWallBC>(&bcv)) {
                const int m = st_.cv.master[static_cast<size_t>(cell)];
                const WallDistribution wd = wall_distribution(hat_f_row(m), vgrid_, dw->u_w,
                                                              dw->T_w, outward[side], gas_.R);
                std::memcpy(ghost_f_[side].data() + static_cast<size_t>(k) * nv_, wd.f_w.data(),
                            sizeof(double) * static_cast<size_t>(nv_));
                std::memcpy(ghost_g_[side].data() + static_cast<size_t>(k) * nv_, wd.g_w.data(),
                            sizeof(double) * static_cast<size_t>(nv_));
            } else if (const auto* in = std::get_if<MaxwellianInflowBC>(&bcv)) {
                double* gf = ghost_f_[side].data() + static_cast<size_t>(k) * nv_;
                double* gg = ghost_g_[side].data() + static_cast<size_t>(k) * nv_;
                std::span<double> gfs(gf, static_cast<size_t>(nv_));
                reduced_maxwellian(in->rho0, in->u0, in->T0, gas_.R, vgrid_, gfs);
                for (int p = 0; p < nv_; ++p) gg[p] = 0.5 * gas_.R * in->T0 * gf[p];
            }
        }
    }
}

const double* Solver::neighbor_f(int i, int j, int side) const {
    switch (side) {
        case 0:
            if (i > 0) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i - 1, j))];
                return m < 0 ? nullptr : hat_f_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_f_[0].data() + static_cast<size_t>(j) * nv_;
        case 1:
            if (i < sgrid_.nx - 1) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i + 1, j))];
                return m < 0 ? nullptr : hat_f_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_f_[1].data() + static_cast<size_t>(j) * nv_;
        case 2:
            if (j > 0) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i, j - 1))];
                return m < 0 ? nullptr : hat_f_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_f_[2].data() + static_cast<size_t>(i) * nv_;
        default:
            if (j < sgrid_.ny - 1) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i, j + 1))];
                return m < 0 ? nullptr : hat_f_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_f_[3].data() + static_cast<size_t>(i) * nv_;
    }
}

const double* Solver::neighbor_g(int i, int j, int side) const {
    switch (side) {
        case 0:
            if (i > 0) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i - 1, j))];
                return m < 0 ? nullptr : hat_g_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_g_[0].data() + static_cast<size_t>(j) * nv_;
        case 1:
            if (i < sgrid_.nx - 1) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i + 1, j))];
                return m < 0 ? nullptr : hat_g_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_g_[1].data() + static_cast<size_t>(j) * nv_;
        case 2:
            if (j > 0) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i, j - 1))];
                return m < 0 ? nullptr : hat_g_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_g_[2].data() + static_cast<size_t>(i) * nv_;
        default:
            if (j < sgrid_.ny - 1) {
                const int m = st_.cv.master[static_cast<size_t>(sgrid_.cell_index(i, j + 1))];
                return m < 0 ? nullptr : hat_g_.data() + static_cast<size_t>(m) * nv_;
            }
            return ghost_g_[3].data() + static_cast<size_t>(i) * nv_;
    }
}

// ---------------------------------------------------------------------------
// Transport + collision (step 6)
// ---------------------------------------------------------------------------

void Solver::transport_and_collide() {
    if (integrator_ == TimeIntegrator::Explicit) ensure_master_params();

    const int nmaster = static_cast<int>(st_.cv.masters.size());
    const double dt = st_.dt;
    std::exception_ptr err;

#pragma omp parallel for schedule(dynamic, 16)
    for (int s = 0; s < nmaster; ++s) {
        try {
            thread_local std::vector<double> phi_f, phi_g, feq, geq;
            phi_f.assign(static_cast<size_t>(nv_), 0.0);
            phi_g.assign(static_cast<size_t>(nv_), 0.0);
            feq.resize(static_cast<size_t>(nv_));
            geq.resize(static_cast<size_t>(nv_));

            const int m = st_.cv.masters[static_cast<size_t>(s)];
            const double* own_f = hat_f_.data() + static_cast<size_t>(m) * nv_;
            const double* own_g = hat_g_.data() + static_cast<size_t>(m) * nv_;

            for (int k = st_.cv.member_begin[static_cast<size_t>(s)];
                 k < st_.cv.member_begin[static_cast<size_t>(s) + 1]; ++k) {
                const int c = st_.cv.member_cells[static_cast<size_t>(k)];
                const int i = c % sgrid_.nx;
                const int j = c / sgrid_.nx;
                const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(c)];

                if (g.lxm() > 0.0) {
                    const double L = g.lxm();
                    const double* nf = neighbor_f(i, j, 0);
                    const double* ng = neighbor_g(i, j, 0);
                    for (int p = 0; p < nv_; ++p) {
                        const double up = vx_pos_[static_cast<size_t>(p)];
                        const double un = vx_neg_[static_cast<size_t>(p)];
                        phi_f[static_cast<size_t>(p)] -= L * (un * own_f[p] + up * nf[p]);
                        phi_g[static_cast<size_t>(p)] -= L * (un * own_g[p] + up * ng[p]);
                    }
                }
                if (g.lxp() > 0.0) {
                    const double L = g.lxp();
                    const double* nf = neighbor_f(i, j, 1);
                    const double* ng = neighbor_g(i, j, 1);
                    for (int p = 0; p < nv_; ++p) {
                        const double up = vx_pos_[static_cast<size_t>(p)];
                        const double un = vx_neg_[static_cast<size_t>(p)];
                        phi_f[static_cast<size_t>(p)] += L * (un * nf[p] + up * own_f[p]);
                        phi_g[static_cast<size_t>(p)] += L * (un * ng[p] + up * own_g[p]);
                    }
                }
                if (g.lym() > 0.0) {
                    const double L = g.lym();
                    const double* nf = neighbor_f(i, j, 2);
                    const double* ng = neighbor_g(i, j, 2);
                    for (int p = 0; p < nv_; ++p) {
                        const double up = vy_pos_[static_cast<size_t>(p)];
                        const double un = vy_neg_[static_cast<size_t>(p)];
                        phi_f[static_cast<size_t>(p)] -= L * (un * own_f[p] + up * nf[p]);
                        phi_g[static_cast<size_t>(p)] -= L * (un * own_g[p] + up * ng[p]);
                    }
                }
                if (g.lyp() > 0.0) {
                    const double L = g.lyp();
                    const double* nf = neighbor_f(i, j, 3);
                    const double* ng = neighbor_g(i, j, 3);
                    for (int p = 0; p < nv_; ++p) {
                        const double up = vy_pos_[static_cast<size_t>(p)];
                        const double un = vy_neg_[static_cast<size_t>(p)];
                        phi_f[static_cast<size_t>(p)] += L * (un * nf[p] + up * own_f[p]);
                        phi_g[static_cast<size_t>(p)] += L * (un * ng[p] + up * own_g[p]);
                    }
                }
                const int wr = wall_row_of_cell_[static_cast<size_t>(c)];
                if (wr >= 0) {
                    const WallRow& row = wall_rows_[static_cast<size_t>(wr)];
                    for (int p = 0; p < nv_; ++p) {
                        const double wn = row.wn[static_cast<size_t>(p)];
                        if (wn < 0.0) {
                            phi_f[static_cast<size_t>(p)] += wn * row.f_w[static_cast<size_t>(p)];
                            phi_g[static_cast<size_t>(p)] += wn * row.g_w[static_cast<size_t>(p)];
                        } else {
                            phi_f[static_cast<size_t>(p)] += wn * own_f[p];
                            phi_g[static_cast<size_t>(p)] += wn * own_g[p];
                        }
                    }
                }
            }

            const double S_now = st_.cv.cv_area[static_cast<size_t>(m)];
            const double S_next = st_.cv_area_next[static_cast<size_t>(m)];
            const double ratio = S_now / S_next;
            const double a = dt / S_next;
            double* out_f = new_f_.data() + static_cast<size_t>(m) * nv_;
            double* out_g = new_g_.data() + static_cast<size_t>(m) * nv_;

            if (integrator_ == TimeIntegrator::Explicit) {
                const EqParams& par = master_params_[static_cast<size_t>(s)];
                MacroFields eqm;
                eqm.rho = par.rho;
                eqm.u = par.u;
                eqm.T = par.T;
                eqm.P = par.rho * gas_.R * par.T;
                if (gas_.collision == CollisionKind::Shakhov && gas_.Pr != 1.0) {
                    // Same frozen q the conservative solve targeted.
                    eqm.q = compute_moments(hat_f_row(m), hat_g_row(m), vgrid_, gas_.R).q;
                }
                equilibrium_pair(eqm, gas_, vgrid_, feq, geq);
                const double relax = ratio * dt / master_tau_[static_cast<size_t>(s)];
                for (int p = 0; p < nv_; ++p) {
                    out_f[p] = ratio * own_f[p] - a * phi_f[static_cast<size_t>(p)] +
                               relax * (feq[static_cast<size_t>(p)] - own_f[p]);
                    out_g[p] = ratio * own_g[p] - a * phi_g[static_cast<size_t>(p)] +
                               relax * (geq[static_cast<size_t>(p)] - own_g[p]);
                }
            } else {
                for (int p = 0; p < nv_; ++p) {
                    out_f[p] = ratio * own_f[p] - a * phi_f[static_cast<size_t>(p)];
                    out_g[p] = ratio * own_g[p] - a * phi_g[static_cast<size_t>(p)];
                }
                const MacroFields mac = compute_moments(hat_f_row(m), hat_g_row(m), vgrid_, gas_.R);
                const double tau = relaxation_time(mac, gas_);
                std::span<double> of(out_f, static_cast<size_t>(nv_));
                std::span<double> og(out_g, static_cast<size_t>(nv_));
                conservative_equilibrium_pair(of, og, vgrid_, gas_, feq, geq);
                const double d = dt / tau;
                const double scale = 1.0 / (1.0 + d);
                for (int p = 0; p < nv_; ++p) {
                    out_f[p] = (out_f[p] + d * feq[static_cast<size_t>(p)]) * scale;
                    out_g[p] = (out_g[p] + d * geq[static_cast<size_t>(p)]) * scale;
                }
            }
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Redistribute (step 7)
// ---------------------------------------------------------------------------

void Solver::redistribute() {
    const int nc = sgrid_.cell_count();
#pragma omp parallel for schedule(static)
    for (int c = 0; c < nc; ++c) {
        double* cf = st_.field.f.data() + static_cast<size_t>(c) * nv_;
        double* cg = st_.field.g.data() + static_cast<size_t>(c) * nv_;
        const int m = st_.cv.master[static_cast<size_t>(c)];
        if (m < 0) {
            std::fill(cf, cf + nv_, 0.0);
            std::fill(cg, cg + nv_, 0.0);
            continue;
        }
        std::memcpy(cf, new_f_.data() + static_cast<size_t>(m) * nv_,
                    sizeof(double) * static_cast<size_t>(nv_));
        std::memcpy(cg, new_g_.data() + static_cast<size_t>(m) * nv_,
                    sizeof(double) * static_cast<size_t>(nv_));
    }
}

// ---------------------------------------------------------------------------
// The seven-substep iteration
// ---------------------------------------------------------------------------

void Solver::step() {
    auto hook = [this](int sub) {
        if (step_hook) step_hook(st_.n, sub);
    };

    ensure_merged();
    choose_dt_and_next_geometry();

    hook(1);  // body position advanced (pending_body_ pose)
    hook(2);  // control volumes arranged and values merged
    hook(3);  // geometry and areas at t^{n+1}
    hook(4);
    build_wall_rows();
    hook(5);
    compute_loads_and_advance(pending_body_);
    hook(6);
    build_ghosts();
    transport_and_collide();
    hook(7);
    redistribute();

    hat_f_.swap(new_f_);
    hat_g_.swap(new_g_);
    st_.body = pending_body_;
    st_.geom_now.swap(st_.geom_next);
    st_.t += st_.dt;
    st_.n += 1;
    merged_fresh_ = false;
    master_params_fresh_ = false;
}

// ---------------------------------------------------------------------------
// Audits, probes, test hooks
// ---------------------------------------------------------------------------

double Solver::total_mass() {
    const double w = vgrid_.weight();
    double mass = 0.0;
    for (const int32_t m : st_.cv.masters) {
        if (!st_.cv.delta[static_cast<size_t>(m)]) continue;
        const auto hf = hat_f_row(m);
        double s = 0.0;
        for (int p = 0; p < nv_; ++p) s += hf[static_cast<size_t>(p)];
        mass += st_.cv_area_next[static_cast<size_t>(m)] * s * w;
    }
    return mass;
}

double Solver::total_mass_cellwise() const {
    const double w = vgrid_.weight();
    double mass = 0.0;
    const int nc = sgrid_.cell_count();
    for (int c = 0; c < nc; ++c) {
        const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(c)];
        if (g.type == CellType::Solid) continue;
        const auto cf = st_.field.f_row(c);
        double s = 0.0;
        for (int p = 0; p < nv_; ++p) s += cf[static_cast<size_t>(p)];
        mass += g.area * s * w;
    }
    return mass;
}

MacroFields Solver::cell_macro(int c) const {
    MacroFields out;
    if (st_.geom_now[static_cast<size_t>(c)].type == CellType::Solid) return out;
    const ConservedMoments cm = conserved_moments(st_.field.f_row(c), st_.field.g_row(c), vgrid_);
    if (!(cm.rho > 0.0)) return out;
    return compute_moments(st_.field.f_row(c), st_.field.g_row(c), vgrid_, gas_.R);
}

double Solver::min_distribution_value() const {
    double mn = std::numeric_limits<double>::infinity();
    const int nc = sgrid_.cell_count();
    for (int c = 0; c < nc; ++c) {
        if (st_.geom_now[static_cast<size_t>(c)].type == CellType::Solid) continue;
        for (const double v : st_.field.f_row(c)) mn = std::min(mn, v);
        for (const double v : st_.field.g_row(c)) mn = std::min(mn, v);
    }
    return mn;
}

double Solver::probe_mean_pressure(double x_lo, double x_hi, double P_ref) const {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < sgrid_.ny; ++j) {
        for (int i = 0; i < sgrid_.nx; ++i) {
            const int c = sgrid_.cell_index(i, j);
            const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(c)];
            if (g.type == CellType::Solid) continue;
            const double x = sgrid_.center(i, j).x();
            if (x < x_lo || x > x_hi) continue;
            const MacroFields mac = cell_macro(c);
            if (!(mac.rho > 0.0)) continue;
            num += g.area * mac.P;
            den += g.area;
        }
    }
    return den > 0.0 ? num / den / P_ref : 0.0;
}

std::span<const double> Solver::merged_f_row(int c) const {
    return hat_f_row(st_.cv.master[static_cast<size_t>(c)]);
}
std::span<const double> Solver::merged_g_row(int c) const {
    return hat_g_row(st_.cv.master[static_cast<size_t>(c)]);
}

std::array<double, 4> Solver::cartesian_fluxes(int i, int j, int p) {
    ensure_merged();
    build_ghosts();
    const int c = sgrid_.cell_index(i, j);
    const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(c)];
    const int m = st_.cv.master[static_cast<size_t>(c)];
    const double own_f = hat_f_row(m)[static_cast<size_t>(p)];
    const double vp1 = vgrid_.vx[static_cast<size_t>(p)];
    const double vp2 = vgrid_.vy[static_cast<size_t>(p)];

    std::array<double, 4> F = {0, 0, 0, 0};
    if (g.lxm() > 0.0)
        F[0] = g.lxm() * (std::min(vp1, 0.0) * own_f + std::max(vp1, 0.0) * neighbor_f(i, j, 0)[p]);
    if (g.lxp() > 0.0)
        F[1] = g.lxp() * (std::min(vp1, 0.0) * neighbor_f(i, j, 1)[p] + std::max(vp1, 0.0) * own_f);
    if (g.lym() > 0.0)
        F[2] = g.lym() * (std::min(vp2, 0.0) * own_f + std::max(vp2, 0.0) * neighbor_f(i, j, 2)[p]);
    if (g.lyp() > 0.0)
        F[3] = g.lyp() * (std::min(vp2, 0.0) * neighbor_f(i, j, 3)[p] + std::max(vp2, 0.0) * own_f);
    return F;
}

double Solver::wall_flux(int i, int j, int p) {
    ensure_merged();
    const int c = sgrid_.cell_index(i, j);
    const VirtualCellGeom& g = st_.geom_now[static_cast<size_t>(c)];
    if (g.type != CellType::Cut) return 0.0;
    if (wall_rows_.empty() || wall_row_of_cell_[static_cast<size_t>(c)] < 0) build_wall_rows();
    const WallRow& row = wall_rows_[static_cast<size_t>(wall_row_of_cell_[static_cast<size_t>(c)])];
    const int m = st_.cv.master[static_cast<size_t>(c)];
    const double wn = row.wn[static_cast<size_t>(p)];
    return wn < 0.0 ? wn * row.f_w[static_cast<size_t>(p)]
                    : wn * hat_f_row(m)[static_cast<size_t>(p)];
}

}  // namespace kinecell
