#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cadgym/core/result.hpp"
#include "cadgym/feedback/feedback.hpp"

namespace cadgym::proto {

/// One decoded tool invocation: library name plus structured arguments.
struct ToolCall {
    std::string name;
    nlohmann::json arguments = nlohmann::json::object();

    bool operator==(const ToolCall&) const = default;
};

/// One parsed agent turn. A turn carries an optional reasoning body, then
/// either tool calls or the terminal answer token, never both.
struct AgentTurn {
    std::optional<std::string> think;
    std::vector<ToolCall> tool_calls;
    std::optional<std::string> answer;

    bool is_terminal() const { return answer.has_value(); }
    bool operator==(const AgentTurn&) const = default;
};

enum class ParseError {
    none,
    unbalanced_tags,
    malformed_tool_json,
    unknown_tool,
    exclusive_violation,
    empty_turn,
};

const char* parse_error_name(ParseError e);

enum class SegmentKind { think, tool_call, tool_response, answer };

const char* segment_kind_name(SegmentKind k);

/// Transcript atom: a recognized tag block with its raw body.
struct TaggedSegment {
    SegmentKind kind;
    std::string body;

    bool operator==(const TaggedSegment&) const = default;
};

struct FormatVerdict {
    bool ok = false;
    std::vector<std::string> violations;
};

/// Extracts `<think>`, `<tool_call>`, `<answer>` blocks from raw agent text.
/// Prose outside tags is ignored; structural problems are errors.
Result<AgentTurn, ParseError> parse_agent_output(const std::string& text);

/// Canonical text form; parse_agent_output(serialize_turn(t)) == t.
std::string serialize_turn(const AgentTurn& turn);

/// All recognized tag blocks in order of appearance, tolerant of noise
/// between blocks. Unbalanced tags abort with the violation noted.
Result<std::vector<TaggedSegment>, ParseError> extract_segments(const std::string& text);

std::string serialize_segments(const std::vector<TaggedSegment>& segments);

/// Checks the transcript structure: the three working tags all present,
/// blocks balanced in order, and every tool_call preceded by its turn's
/// think and answered by a tool_response.
FormatVerdict validate_format(const std::vector<TaggedSegment>& segments);

/// Convenience: extract then validate; extraction failures are violations.
FormatVerdict validate_format_text(const std::string& transcript);

/// Environment-side rendering of an observation; parse_tool_response is its
/// inverse on the structured fields.
std::string render_tool_response(const feedback::Observation& obs);
Result<feedback::Observation, ParseError> parse_tool_response(const std::string& block);

nlohmann::json observation_to_json(const feedback::Observation& obs);
Result<feedback::Observation, ParseError> observation_from_json(const nlohmann::json& j);

}  // namespace cadgym::proto
