#pragma once

#include <string>

namespace cadgym::gym {

/// System prompt seeded into every episode; fixtures/prompts/ carries the
/// same text on disk for clients that assemble prompts themselves.
const std::string& agent_system_prompt();

/// Prompt template for a learned trajectory judge answering YES/NO.
const std::string& judge_prompt_template();

}  // namespace cadgym::gym
