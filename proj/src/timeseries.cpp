#include "kinecell/timeseries.hpp"

#include <cstdio>
#include <fstream>

namespace kinecell {

void write_timeseries(const std::vector<TimeSeriesRecord>& records,
                      const std::vector<std::string>& probe_names, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    out << "t,ux,uy,theta,theta_dot,mass,Fx,Fy,torque";
    for (const std::string& name : probe_names) out << ',' << name;
    out << '\n';

    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (const TimeSeriesRecord& r : records) {
        put(r.t, ',');
        put(r.u_c.x(), ',');
        put(r.u_c.y(), ',');
        put(r.theta, ',');
        put(r.theta_dot, ',');
        put(r.mass, ',');
        put(r.force.x(), ',');
        put(r.force.y(), ',');
        std::snprintf(buf, sizeof buf, "%.17g", r.torque);
        out << buf;
        for (const double v : r.probes) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace kinecell
