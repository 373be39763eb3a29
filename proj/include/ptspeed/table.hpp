#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ptspeed/liouvillian.hpp"

namespace ptspeed {

/* One sampled row of a two-level speed table. */
struct SpeedRow {
    double t = 0.0;
    double v = 0.0;
    double v_r = 0.0;
    double v_t = 0.0;
    double r_x = 0.0;
    double r_y = 0.0;
    double r_z = 0.0;
    double purity = 0.0;
};

struct SpeedTable {
    std::vector<SpeedRow> rows;
};

/* Propagates r0 exactly on the uniform grid {0, dt, ..., <= t_max} and
   evaluates the speed observables at every sample.  Two-level models only
   (the row layout is fixed); larger models raise DimensionMismatchError.
   v_t is clamped at zero when rounding drives v^2 - v_r^2 slightly negative. */
SpeedTable build_speed_table(const LindbladModel& model, const RealVector& r0, double t_max,
                             double dt);

/* CSV with header "t,v,v_R,v_T,r_x,r_y,r_z,purity", 17-significant-digit
   decimal values, LF line endings. */
void write_csv(std::ostream& out, const SpeedTable& table);

/* JSON array of row objects in column order; numbers use the shortest
   round-trip decimal representation. */
void write_json(std::ostream& out, const SpeedTable& table);

/* Indices i with y[i] > y[i-1] and y[i] > y[i+1] by more than
   relative_margin times the series amplitude, so jitter below the margin
   (rounding noise, or the larger cancellation noise of derived quantities)
   does not register as extrema.  Endpoints excluded. */
std::vector<std::size_t> local_maxima_indices(const std::vector<double>& y,
                                              double relative_margin = 1e-12);

/* Counterpart for dips: local_maxima_indices of the negated series. */
std::vector<std::size_t> local_minima_indices(const std::vector<double>& y,
                                              double relative_margin = 1e-12);

/* Quadratic-vertex refinement of an interior extremum at index i on a uniform
   grid; falls back to t[i] when the three-point curvature vanishes. */
double refine_extremum(const std::vector<double>& t, const std::vector<double>& y, std::size_t i);

/* Linearly interpolated roots of y(t); sign changes and exact zeros, one root
   per crossing, in increasing order. */
std::vector<double> zero_crossings(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace ptspeed
