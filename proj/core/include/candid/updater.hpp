#pragma once

#include <cstdint>
#include <span>

#include "candid/detector.hpp"
#include "candid/model.hpp"
#include "candid/params.hpp"
#include "candid/plane.hpp"

namespace candid {

// mean(recent history) - intensity. Sign selects the replacement victim.
double recent_distance(std::span<const std::uint8_t> rhm, std::uint8_t intensity);

// One stochastic gate: true with probability 1/t. Consumes exactly one draw.
bool update_gate(SplitMix64& rng, double t);

// Replace the sample nearest the intensity when rdist >= 0, the farthest one
// otherwise. min_index/max_index are argmin/argmax of the distances between
// the incoming intensity and the samples; ties resolve to the lowest index.
void deterministic_replace(std::span<std::uint8_t> samples, std::uint8_t intensity, double rdist,
                           int min_index, int max_index);

// FIFO push: overwrite the oldest entry, advance the cursor.
void update_recent_history(ModelState& state, std::size_t pixel, std::uint8_t intensity);

// Propagate intensity into one uniformly chosen in-bounds 8-neighbor of
// (x, y). Victim selection recomputes distances between the center intensity
// and the neighbor's current samples; the sign comes from the neighbor's own
// recent history, which is read but never written. Consumes exactly one draw,
// none when the frame is a single pixel.
void spatial_diffusion(ModelState& state, int x, int y, std::uint8_t intensity);

// Full conditional-update pass over a detected frame, raster order. For each
// background pixel: one gate draw on its t; when the gate fires, replace one
// own sample (victim chosen from the detect-pass distances) and diffuse to a
// neighbor on the same firing; finally push the recent history whether or not
// the gate fired. Foreground pixels change nothing and consume no draws.
void update_frame(ModelState& state, const Frame& frame, const MaskFrame& mask,
                  const DetectScratch& scratch);

}  // namespace candid
