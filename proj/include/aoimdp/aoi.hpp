#pragma once

#include <cstddef>
#include <vector>

namespace aoimdp::aoi {

// One received status update: transmitted at transmit_time, in flight for
// delay, received at transmit_time + delay. wait_after is the gap between
// this reception and the next transmission (unused on the last record).
struct UpdateRecord {
  double transmit_time = 0.0;
  double delay = 0.0;
  double wait_after = 0.0;

  double reception_time() const { return transmit_time + delay; }
};

// The epoch substrate of the AoI sawtooth: the age at t = 0 plus the
// ordered transmit/receive epochs of every update.
struct UpdateTimeline {
  double initial_age = 0.0;
  std::vector<UpdateRecord> updates;

  bool empty() const { return updates.empty(); }
  std::size_t size() const { return updates.size(); }

  // Reception time of the last update; the integration horizon.
  double horizon() const;

  // Checks ordering and positivity invariants; throws on violation.
  void validate() const;
};

struct AoiSummary {
  double time_avg_aoi = 0.0;
  double total_area = 0.0;
  double horizon = 0.0;
  std::size_t update_count = 0;
};

// Age of the freshest received information at time t. Before the first
// reception the age grows from initial_age; afterwards it is t minus the
// transmit time of the latest reception.
double instantaneous_aoi(const UpdateTimeline& timeline, double t);

// Closed-form time average of the sawtooth over [0, horizon]. When
// paper_literal_formula is set the sum-of-trapezoids numerator keeps its
// published scaling (segment terms undoubled, then the whole numerator
// halved), which double-halves the initial segment; the default is the
// geometrically exact area / horizon.
AoiSummary time_averaged_aoi(const UpdateTimeline& timeline,
                             bool paper_literal_formula = false);

// Midpoint-rule numeric average of instantaneous_aoi over [0, horizon].
// Independent oracle for time_averaged_aoi; converges as dt -> 0.
double integrate_sawtooth(const UpdateTimeline& timeline, double dt);

// Appends an update transmitted wait_prev after the previous reception
// (at t = 0 for the first update, where wait_prev must be 0).
void append_update(UpdateTimeline& timeline, double delay, double wait_prev);

}  // namespace aoimdp::aoi
