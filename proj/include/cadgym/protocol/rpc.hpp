#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cadgym/gym/episode.hpp"
#include "cadgym/gym/task.hpp"
#include "cadgym/reward/reward.hpp"

namespace cadgym::proto {

inline constexpr int kRpcParseError = -32700;
inline constexpr int kRpcInvalidRequest = -32600;
inline constexpr int kRpcMethodNotFound = -32601;
inline constexpr int kRpcInvalidParams = -32602;

struct ServeOptions {
    std::optional<gym::Task> task;     // instruction + ground truth for scoring
    std::string trajectory_path;       // flush the session record here, if set
    gym::EpisodeConfig episode;
    geom::GeomConfig geometry;
    reward::RewardWeights weights;
    double judge_iou_threshold = 0.95;
    int judge_resolution = 64;
};

/// Line-delimited JSON-RPC 2.0 loop over the given streams: answers
/// tools/list with the six tool descriptors and routes tools/call into a
/// fresh modeling session. Runs until the input stream closes, then flushes
/// the session trajectory. Returns 0 on a clean close.
int serve(std::istream& in, std::ostream& out, const ServeOptions& options);

/// Response line for one raw request line (exposed for fixture tests).
std::string handle_rpc_line(const std::string& line, gym::EpisodeState& session);

}  // namespace cadgym::proto
