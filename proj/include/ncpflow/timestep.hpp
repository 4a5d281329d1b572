#ifndef NCPFLOW_TIMESTEP_HPP
#define NCPFLOW_TIMESTEP_HPP

#include <stdexcept>

namespace ncpflow {

/// Adaptive time-step controller: double the step when a solve needs at most
/// 10 nonlinear iterations, hold for 11-15, halve above 15 or on failure
/// (failed steps are retried at the same time with the halved step). The step
/// stays inside [dt_min, dt_max] and is clipped so the end time is hit
/// exactly.
class TimeStepController {
 public:
  TimeStepController(double dt_initial, double dt_min, double dt_max, double end_time)
      : dt_(dt_initial), dt_min_(dt_min), dt_max_(dt_max), end_time_(end_time) {
    if (!(dt_min > 0.0) || dt_min > dt_max || dt_initial < dt_min || dt_initial > dt_max)
      throw std::invalid_argument("TimeStepController: need 0 < dt_min <= dt_initial <= dt_max");
    if (!(end_time > 0.0)) throw std::invalid_argument("TimeStepController: end time must be positive");
  }

  double dt() const { return dt_; }
  double dt_min() const { return dt_min_; }
  double end_time() const { return end_time_; }

  /// The step to attempt from time t (never overshoots the end time).
  double clipped_dt(double t) const {
    const double remaining = end_time_ - t;
    return dt_ < remaining ? dt_ : remaining;
  }

  /// Updates the step after an attempt with the given iteration count.
  /// Returns false when a failure would push dt below dt_min (retry is
  /// pointless and the run must abort).
  bool advance(bool success, int nonlinear_iterations) {
    if (!success) {
      dt_ *= 0.5;
      return dt_ >= dt_min_;
    }
    if (nonlinear_iterations <= 10)
      dt_ *= 2.0;
    else if (nonlinear_iterations > 15)
      dt_ *= 0.5;
    if (dt_ > dt_max_) dt_ = dt_max_;
    if (dt_ < dt_min_) dt_ = dt_min_;
    return true;
  }

 private:
  double dt_;
  double dt_min_;
  double dt_max_;
  double end_time_;
};

}  // namespace ncpflow

#endif
