#include "aoimdp/aoi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoimdp::aoi {

double UpdateTimeline::horizon() const {
  if (updates.empty()) return 0.0;
  return updates.back().reception_time();
}

void UpdateTimeline::validate() const {
  if (initial_age < 0.0) throw std::invalid_argument("initial_age must be >= 0");
  double prev_reception = -1.0;
  for (std::size_t i = 0; i < updates.size(); ++i) {
    const UpdateRecord& u = updates[i];
    if (u.delay <= 0.0) throw std::invalid_argument("update delay must be > 0");
    if (u.wait_after < 0.0) throw std::invalid_argument("wait_after must be >= 0");
    if (i > 0) {
      const UpdateRecord& p = updates[i - 1];
      const double expected_t = p.reception_time() + p.wait_after;
      if (std::abs(u.transmit_time - expected_t) > 1e-9 * (1.0 + std::abs(expected_t)))
        throw std::invalid_argument("transmit_time inconsistent with previous reception + wait");
    }
    if (u.reception_time() <= prev_reception)
      throw std::invalid_argument("reception times must be strictly increasing");
    prev_reception = u.reception_time();
  }
}

double instantaneous_aoi(const UpdateTimeline& timeline, double t) {
  if (t < 0.0) throw std::invalid_argument("instantaneous_aoi: t must be >= 0");
  if (timeline.updates.empty()) return timeline.initial_age + t;
  // Latest update with reception_time <= t.
  auto it = std::upper_bound(
      timeline.updates.begin(), timeline.updates.end(), t,
      [](double value, const UpdateRecord& u) { return value < u.reception_time(); });
  if (it == timeline.updates.begin()) return timeline.initial_age + t;
  return t - std::prev(it)->transmit_time;
}

AoiSummary time_averaged_aoi(const UpdateTimeline& timeline,
                             bool paper_literal_formula) {
  if (timeline.updates.empty())
    throw std::invalid_argument("time_averaged_aoi: timeline has no updates");
  const double horizon = timeline.horizon();
  if (horizon <= 0.0)
    throw std::invalid_argument("time_averaged_aoi: zero horizon");

  const double d0 = timeline.updates.front().reception_time();
  // Initial segment: age climbs from initial_age to initial_age + d0.
  const double s0 =
      0.5 * (2.0 * timeline.initial_age + d0) * d0;

  double segment_sum = 0.0;  // trapezoid areas between consecutive receptions
  for (std::size_t i = 1; i < timeline.updates.size(); ++i) {
    const UpdateRecord& prev = timeline.updates[i - 1];
    const UpdateRecord& cur = timeline.updates[i];
    const double width = cur.reception_time() - prev.reception_time();
    // width = wait + delay; age runs from prev.delay up to prev.delay + width.
    segment_sum += (2.0 * prev.delay + width) * width;
  }

  AoiSummary out;
  out.horizon = horizon;
  out.update_count = timeline.updates.size();
  out.total_area = 0.5 * segment_sum + s0;
  out.time_avg_aoi = paper_literal_formula
                         ? (segment_sum + s0) / (2.0 * horizon)
                         : out.total_area / horizon;
  return out;
}

double integrate_sawtooth(const UpdateTimeline& timeline, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("integrate_sawtooth: dt must be > 0");
  if (timeline.updates.empty())
    throw std::invalid_argument("integrate_sawtooth: timeline has no updates");
  const double horizon = timeline.horizon();
  if (horizon <= 0.0)
    throw std::invalid_argument("integrate_sawtooth: zero horizon");

  double area = 0.0;
  double t = 0.0;
  while (t < horizon) {
    const double step = std::min(dt, horizon - t);
    area += instantaneous_aoi(timeline, t + 0.5 * step) * step;
    t += step;
  }
  return area / horizon;
}

void append_update(UpdateTimeline& timeline, double delay, double wait_prev) {
  if (delay <= 0.0) throw std::invalid_argument("append_update: delay must be > 0");
  if (wait_prev < 0.0) throw std::invalid_argument("append_update: wait must be >= 0");
  UpdateRecord rec;
  if (timeline.updates.empty()) {
    rec.transmit_time = 0.0;
  } else {
    UpdateRecord& last = timeline.updates.back();
    last.wait_after = wait_prev;
    rec.transmit_time = last.reception_time() + wait_prev;
  }
  rec.delay = delay;
  rec.wait_after = 0.0;
  timeline.updates.push_back(rec);
}

}  // namespace aoimdp::aoi
