#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace pnmds {

/// Wire vocabulary of the protocol. Nine tags fit in a 4-bit tag field;
/// that fixed width is what makes the message-size budget bit-exact.
enum class MessageTag : std::uint8_t {
    in_d = 0,     // "I am in D" (presence = true)
    dominated,    // "I am dominated" (presence = true)
    delta,        // residual degree δ, carries payload
    choose_x,     // "you are my x(v)"
    in_x,         // "I am in X" (presence = true)
    delta_x,      // residual X degree δˣ, carries payload
    choose_d,     // "you are my d(v)"
    join_d,       // reserved in the vocabulary; unused by the schedule
    choose_w,     // "you are my w(v)"
};

inline constexpr std::size_t kTagBits = 4;
inline constexpr std::size_t kTagCount = 9;

inline std::string_view tag_name(MessageTag t) {
    constexpr std::array<std::string_view, kTagCount> names = {
        "IN_D", "DOMINATED", "DELTA", "CHOOSE_X", "IN_X",
        "DELTA_X", "CHOOSE_D", "JOIN_D", "CHOOSE_W"};
    return names[static_cast<std::size_t>(t)];
}

/// One per-port, per-round unit of communication. The payload is present
/// exactly for the two degree-broadcast tags and never exceeds n.
struct Message {
    MessageTag tag;
    std::optional<std::uint32_t> payload;
    friend bool operator==(const Message&, const Message&) = default;
};

inline constexpr bool tag_carries_payload(MessageTag t) {
    return t == MessageTag::delta || t == MessageTag::delta_x;
}

/// Bits needed for one payload value in 0..n: ⌈log₂(n+1)⌉.
inline std::size_t payload_bits(std::size_t n) {
    return std::bit_width(n);
}

/// Encoded size of a message in a network of n nodes:
/// 4 tag bits plus ⌈log₂(n+1)⌉ payload bits when a payload is present.
inline std::size_t message_bits(const Message& m, std::size_t n) {
    return kTagBits + (m.payload ? payload_bits(n) : 0);
}

}  // namespace pnmds
