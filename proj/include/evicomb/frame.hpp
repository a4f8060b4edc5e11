#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evicomb/errors.hpp"

namespace evicomb {

/// Ordered set of mutually exclusive hypothesis labels. Subsets are packed
/// into a 32-bit word (bit i = label i), hence the size cap.
///
/// Frames have identity semantics: copies of a Frame refer to the same frame,
/// while two frames constructed independently are distinct even when their
/// label lists match. Every cross-frame operation throws FrameMismatchError.
class Frame {
public:
    static constexpr std::size_t max_size = 30;

    /// Builds a frame from distinct labels, keeping the input order.
    static Frame make(std::vector<std::string> labels);

    std::size_t size() const noexcept { return data_->labels.size(); }
    const std::vector<std::string>& labels() const noexcept { return data_->labels; }
    const std::string& label(std::size_t index) const { return data_->labels.at(index); }

    /// Index of `label`, or nullopt when the frame does not contain it.
    std::optional<std::size_t> find(const std::string& label) const noexcept;

    /// Like find(), but throws FrameError{unknown_label}.
    std::size_t index_of(const std::string& label) const;

    /// Bitmask with one bit per label, i.e. the whole set Theta.
    std::uint32_t full_mask() const noexcept {
        return (std::uint32_t{1} << size()) - 1u;
    }

    friend bool same_frame(const Frame& a, const Frame& b) noexcept {
        return a.data_ == b.data_;
    }

private:
    struct Data {
        std::vector<std::string> labels;
    };

    explicit Frame(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// A subset of one frame's labels, stored as an index bitmask. The empty set
/// and the full set (Theta) are both representable.
class Subset {
public:
    Subset(Frame frame, std::uint32_t bits);

    static Subset empty(Frame frame) { return Subset(std::move(frame), 0u); }
    static Subset full(Frame frame) {
        std::uint32_t mask = frame.full_mask();
        return Subset(std::move(frame), mask);
    }
    static Subset of_indices(Frame frame, const std::vector<std::size_t>& indices);
    static Subset of_labels(Frame frame, const std::vector<std::string>& labels);

    const Frame& frame() const noexcept { return frame_; }
    std::uint32_t bits() const noexcept { return bits_; }

    bool is_empty() const noexcept { return bits_ == 0; }
    bool is_full() const noexcept { return bits_ == frame_.full_mask(); }
    std::size_t count() const noexcept;
    bool contains(std::size_t index) const noexcept {
        return (bits_ >> index) & 1u;
    }

    Subset complement() const { return Subset(frame_, bits_ ^ frame_.full_mask()); }

    /// Member labels in frame order.
    std::vector<std::string> member_labels() const;

private:
    Frame frame_;
    std::uint32_t bits_;
};

/// Throws FrameMismatchError unless both values live on the same frame.
void require_same_frame(const Frame& a, const Frame& b, const char* operation);

} // namespace evicomb
