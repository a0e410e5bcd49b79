#pragma once

#include <string>
#include <vector>

#include "kinecell/types.hpp"

namespace kinecell {

struct TimeSeriesRecord {
    double t = 0.0;
    Vec2 u_c = Vec2::Zero();
    double theta = 0.0;
    double theta_dot = 0.0;
    double mass = 0.0;
    Vec2 force = Vec2::Zero();
    double torque = 0.0;
    std::vector<double> probes;
};

/// RFC-4180 CSV, LF endings, 17 significant digits. Header:
/// t,ux,uy,theta,theta_dot,mass,Fx,Fy,torque[,probe...].
void write_timeseries(const std::vector<TimeSeriesRecord>& records,
                      const std::vector<std::string>& probe_names, const std::string& path);

}  // namespace kinecell
