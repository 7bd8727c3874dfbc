#include "cadgym/protocol/tags.hpp"

#include <algorithm>
#include <array>

#include "cadgym/protocol/tools.hpp"

namespace cadgym::proto {

using nlohmann::json;

const char* parse_error_name(ParseError e) {
    switch (e) {
        case ParseError::none: return "none";
        case ParseError::unbalanced_tags: return "unbalanced_tags";
        case ParseError::malformed_tool_json: return "malformed_tool_json";
        case ParseError::unknown_tool: return "unknown_tool";
        case ParseError::exclusive_violation: return "exclusive_violation";
        case ParseError::empty_turn: return "empty_turn";
    }
    return "unknown";
}

const char* segment_kind_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::think: return "think";
        case SegmentKind::tool_call: return "tool_call";
        case SegmentKind::tool_response: return "tool_response";
        case SegmentKind::answer: return "answer";
    }
    return "unknown";
}

namespace {

struct TagDef {
    SegmentKind kind;
    const char* open;
    const char* close;
};

constexpr std::array<TagDef, 4> kTags = {{
    {SegmentKind::think, "<think>", "</think>"},
    {SegmentKind::tool_call, "<tool_call>", "</tool_call>"},
    {SegmentKind::tool_response, "<tool_response>", "</tool_response>"},
    {SegmentKind::answer, "<answer>", "</answer>"},
}};

struct Marker {
    std::size_t pos;
    int tag;  // index into kTags
    bool closing;
};

/// Position of the next opening or closing tag marker at or after `from`.
std::optional<Marker> next_marker(const std::string& text, std::size_t from) {
    std::optional<Marker> best;
    for (int i = 0; i < static_cast<int>(kTags.size()); ++i) {
        for (const bool closing : {false, true}) {
            const char* needle = closing ? kTags[i].close : kTags[i].open;
            const std::size_t pos = text.find(needle, from);
            if (pos == std::string::npos) continue;
            if (!best || pos < best->pos) best = Marker{pos, i, closing};
        }
    }
    return best;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Result<std::vector<TaggedSegment>, ParseError> extract_segments(const std::string& text) {
    using R = Result<std::vector<TaggedSegment>, ParseError>;
    std::vector<TaggedSegment> segments;
    std::size_t pos = 0;
    while (auto marker = next_marker(text, pos)) {
        if (marker->closing)
            return R::err(ParseError::unbalanced_tags,
                          std::string("closing ") + kTags[marker->tag].close +
                              " without a matching opener");
        const TagDef& tag = kTags[marker->tag];
        const std::size_t body_begin = marker->pos + std::string(tag.open).size();
        // The next marker must be this tag's closer; anything else means
        // nested or interleaved blocks.
        const auto inner = next_marker(text, body_begin);
        if (!inner)
            return R::err(ParseError::unbalanced_tags,
                          std::string(tag.open) + " is never closed");
        if (!inner->closing || inner->tag != marker->tag)
            return R::err(ParseError::unbalanced_tags,
                          std::string(tag.open) + " interleaves with another tag");
        segments.push_back(
            TaggedSegment{tag.kind, text.substr(body_begin, inner->pos - body_begin)});
        pos = inner->pos + std::string(tag.close).size();
    }
    return R::ok(std::move(segments));
}

std::string serialize_segments(const std::vector<TaggedSegment>& segments) {
    std::string out;
    for (const auto& seg : segments) {
        const auto tag = std::find_if(kTags.begin(), kTags.end(),
                                      [&](const TagDef& t) { return t.kind == seg.kind; });
        if (!out.empty()) out += "\n";
        out += tag->open;
        out += seg.body;
        out += tag->close;
    }
    return out;
}

Result<AgentTurn, ParseError> parse_agent_output(const std::string& text) {
    using R = Result<AgentTurn, ParseError>;
    auto segments = extract_segments(text);
    if (!segments) return R::err(segments.error(), segments.message());

    AgentTurn turn;
    for (const auto& seg : segments.value()) {
        switch (seg.kind) {
            case SegmentKind::think:
                if (turn.think)
                    *turn.think += "\n" + seg.body;
                else
                    turn.think = seg.body;
                break;
            case SegmentKind::tool_call: {
                json body = json::parse(seg.body, nullptr, false);
                if (body.is_discarded() || !body.is_object())
                    return R::err(ParseError::malformed_tool_json,
                                  "tool_call body is not a JSON object");
                if (!body.contains("name") || !body["name"].is_string())
                    return R::err(ParseError::malformed_tool_json,
                                  "tool_call body is missing a string 'name'");
                ToolCall call;
                call.name = body["name"].get<std::string>();
                if (body.contains("arguments")) {
                    if (!body["arguments"].is_object())
                        return R::err(ParseError::malformed_tool_json,
                                      "tool_call 'arguments' must be an object");
                    call.arguments = body["arguments"];
                }
                if (!is_known_tool(call.name))
                    return R::err(ParseError::unknown_tool,
                                  "'" + call.name + "' is not in the tool library");
                turn.tool_calls.push_back(std::move(call));
                break;
            }
            case SegmentKind::tool_response:
                // Environment-generated blocks carry no meaning in agent
                // output; out-of-place ones are caught by the format check.
                break;
            case SegmentKind::answer:
                turn.answer = trimmed(seg.body);
                break;
        }
    }
    if (turn.answer && !turn.tool_calls.empty())
        return R::err(ParseError::exclusive_violation,
                      "a turn cannot carry both an answer and tool calls");
    if (!turn.think && !turn.answer && turn.tool_calls.empty())
        return R::err(ParseError::empty_turn, "no recognized tags in agent output");
    return R::ok(std::move(turn));
}

std::string serialize_turn(const AgentTurn& turn) {
    std::vector<TaggedSegment> segments;
    if (turn.think) segments.push_back({SegmentKind::think, *turn.think});
    for (const auto& call : turn.tool_calls) {
        json body = {{"name", call.name}, {"arguments", call.arguments}};
        segments.push_back({SegmentKind::tool_call, body.dump()});
    }
    if (turn.answer) segments.push_back({SegmentKind::answer, *turn.answer});
    return serialize_segments(segments);
}

FormatVerdict validate_format(const std::vector<TaggedSegment>& segments) {
    FormatVerdict verdict;
    auto violate = [&](std::string text) { verdict.violations.push_back(std::move(text)); };

    for (const SegmentKind required :
         {SegmentKind::think, SegmentKind::tool_call, SegmentKind::tool_response}) {
        const bool present = std::any_of(segments.begin(), segments.end(),
                                         [&](const auto& s) { return s.kind == required; });
        if (!present) violate(std::string("missing tag: ") + segment_kind_name(required));
    }

    int pending_calls = 0;
    bool turn_has_think = false;
    bool answered = false;
    for (const auto& seg : segments) {
        if (answered) {
            violate("content after the answer tag");
            break;
        }
        switch (seg.kind) {
            case SegmentKind::think:
                if (pending_calls > 0)
                    violate("order: tool_call not answered by a tool_response before the "
                            "next think");
                pending_calls = 0;
                turn_has_think = true;
                break;
            case SegmentKind::tool_call:
                if (!turn_has_think) violate("order: tool_call before any think in its turn");
                ++pending_calls;
                break;
            case SegmentKind::tool_response:
                if (pending_calls == 0)
                    violate("order: tool_response without a preceding tool_call");
                else
                    --pending_calls;
                break;
            case SegmentKind::answer:
                if (pending_calls > 0)
                    violate("order: answer before tool_response for a pending tool_call");
                answered = true;
                break;
        }
    }
    if (pending_calls > 0 && !answered)
        violate("order: trailing tool_call without a tool_response");

    verdict.ok = verdict.violations.empty();
    return verdict;
}

FormatVerdict validate_format_text(const std::string& transcript) {
    auto segments = extract_segments(transcript);
    if (!segments) {
        FormatVerdict verdict;
        verdict.ok = false;
        verdict.violations.push_back("unbalanced tags: " + segments.message());
        return verdict;
    }
    return validate_format(segments.value());
}

json observation_to_json(const feedback::Observation& obs) {
    json objects = json::array();
    for (const auto& info : obs.object_list)
        objects.push_back({{"name", info.name},
                           {"kind", geom::object_kind_name(info.kind)},
                           {"consumed", info.consumed}});
    return {{"label", obs.label}, {"message", obs.message}, {"object_list", objects}};
}

Result<feedback::Observation, ParseError> observation_from_json(const json& j) {
    using R = Result<feedback::Observation, ParseError>;
    if (!j.is_object() || !j.contains("label") || !j["label"].is_string() ||
        !j.contains("message") || !j["message"].is_string() || !j.contains("object_list") ||
        !j["object_list"].is_array())
        return R::err(ParseError::malformed_tool_json, "malformed tool_response fields");
    feedback::Observation obs;
    obs.label = j["label"].get<std::string>();
    obs.message = j["message"].get<std::string>();
    for (const auto& item : j["object_list"]) {
        if (!item.is_object() || !item.contains("name") || !item["name"].is_string() ||
            !item.contains("kind") || !item["kind"].is_string() ||
            !item.contains("consumed") || !item["consumed"].is_boolean())
            return R::err(ParseError::malformed_tool_json, "malformed object_list entry");
        geom::ObjectInfo info;
        info.name = item["name"].get<std::string>();
        const std::string kind = item["kind"].get<std::string>();
        if (kind == "frame") info.kind = geom::ObjectKind::frame;
        else if (kind == "sketch") info.kind = geom::ObjectKind::sketch;
        else if (kind == "solid") info.kind = geom::ObjectKind::solid;
        else return R::err(ParseError::malformed_tool_json, "unknown object kind " + kind);
        info.consumed = item["consumed"].get<bool>();
        obs.object_list.push_back(std::move(info));
    }
    return R::ok(std::move(obs));
}

std::string render_tool_response(const feedback::Observation& obs) {
    return "<tool_response>" + observation_to_json(obs).dump() + "</tool_response>";
}

Result<feedback::Observation, ParseError> parse_tool_response(const std::string& block) {
    using R = Result<feedback::Observation, ParseError>;
    auto segments = extract_segments(block);
    if (!segments) return R::err(segments.error(), segments.message());
    for (const auto& seg : segments.value()) {
        if (seg.kind != SegmentKind::tool_response) continue;
        json body = json::parse(seg.body, nullptr, false);
        if (body.is_discarded())
            return R::err(ParseError::malformed_tool_json,
                          "tool_response body is not valid JSON");
        return observation_from_json(body);
    }
    return R::err(ParseError::empty_turn, "no tool_response block found");
}

}  // namespace cadgym::proto
