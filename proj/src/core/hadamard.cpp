#include "core/hadamard.hpp"

namespace herc {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

HadamardMatrix sylvester(int order) {
  if (!is_power_of_two(order)) {
    throw Error::validation(
        "hadamard: unsupported order " + std::to_string(order) +
        "; Hadamard matrices are only generated for powers of two");
  }
  HadamardMatrix h;
  h.order = order;
  h.entries.assign(static_cast<std::size_t>(order) * order, 1);
  for (int block = 1; block < order; block *= 2) {
    // double the current block: [H H; H -H]
    for (int r = 0; r < block; ++r) {
      for (int c = 0; c < block; ++c) {
        std::int8_t v = h.entries[static_cast<std::size_t>(r) * order + c];
        h.entries[static_cast<std::size_t>(r) * order + (c + block)] = v;
        h.entries[static_cast<std::size_t>(r + block) * order + c] = v;
        h.entries[static_cast<std::size_t>(r + block) * order + (c + block)] =
            static_cast<std::int8_t>(-v);
      }
    }
  }
  return h;
}

std::vector<std::int8_t> transmit_polarity(const BiasSchedule& schedule, int event) {
  if (event < 0 || event >= schedule.n_events) {
    throw Error::validation("transmit_polarity: event " + std::to_string(event) +
                            " out of range [0, " + std::to_string(schedule.n_events) + ")");
  }
  std::vector<std::int8_t> drives(static_cast<std::size_t>(schedule.n_channels));
  for (int ch = 0; ch < schedule.n_channels; ++ch) {
    drives[static_cast<std::size_t>(ch)] = static_cast<std::int8_t>(schedule.sign(event, ch));
  }
  return drives;
}

std::string bias_schedule_csv(const BiasSchedule& schedule) {
  std::string out;
  out.reserve(static_cast<std::size_t>(schedule.n_events) * schedule.n_channels * 3);
  for (int e = 0; e < schedule.n_events; ++e) {
    for (int ch = 0; ch < schedule.n_channels; ++ch) {
      if (ch > 0) out += ',';
      out += schedule.sign(e, ch) > 0 ? "1" : "-1";
    }
    out += '\n';
  }
  return out;
}

}  // namespace herc
