#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace samas {

// The six specialized agent roles a workflow can be assembled from.
enum class AgentRole {
    CoreTranslation,
    LinguisticStructure,
    MetaphorTranslation,
    EmotionTransfer,
    RhythmProsody,
    ConsistencyFidelity,
};

inline constexpr std::array<AgentRole, 6> kAllRoles = {
    AgentRole::CoreTranslation,    AgentRole::LinguisticStructure,
    AgentRole::MetaphorTranslation, AgentRole::EmotionTransfer,
    AgentRole::RhythmProsody,      AgentRole::ConsistencyFidelity,
};

inline const char* role_name(AgentRole role) {
    switch (role) {
        case AgentRole::CoreTranslation: return "core_translation";
        case AgentRole::LinguisticStructure: return "linguistic_structure";
        case AgentRole::MetaphorTranslation: return "metaphor_translation";
        case AgentRole::EmotionTransfer: return "emotion_transfer";
        case AgentRole::RhythmProsody: return "rhythm_prosody";
        case AgentRole::ConsistencyFidelity: return "consistency_fidelity";
    }
    return "unknown";
}

inline std::optional<AgentRole> role_from_name(std::string_view name) {
    for (AgentRole role : kAllRoles)
        if (name == role_name(role)) return role;
    return std::nullopt;
}

} // namespace samas
