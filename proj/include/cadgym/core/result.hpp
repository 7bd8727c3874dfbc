#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <utility>

namespace cadgym {

/// Success-or-typed-error return value. E is a small enum describing what
/// went wrong; message carries the human-readable detail.
template <typename T, typename E>
class Result {
  public:
    static Result ok(T value) {
        Result r;
        r.value_ = std::move(value);
        return r;
    }

    static Result err(E code, std::string message) {
        Result r;
        r.error_ = code;
        r.message_ = std::move(message);
        return r;
    }

    bool has_value() const { return value_.has_value(); }
    explicit operator bool() const { return has_value(); }

    const T& value() const {
        assert(has_value());
        return *value_;
    }
    T& value() {
        assert(has_value());
        return *value_;
    }
    T take() {
        assert(has_value());
        return std::move(*value_);
    }

    E error() const {
        assert(!has_value());
        return error_;
    }
    const std::string& message() const { return message_; }

  private:
    Result() = default;
    std::optional<T> value_;
    E error_{};
    std::string message_;
};

/// Marker for Result<Unit, E> when an operation has no payload.
struct Unit {
    bool operator==(const Unit&) const = default;
};

}  // namespace cadgym
