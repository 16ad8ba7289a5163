#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace laddermod {

// Value-or-error for expected algorithmic outcomes (a failed reduction is
// not an exceptional event). Input and shape errors still throw.
template <class T, class E>
class Result {
public:
    Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
    Result(E error) : v_(std::in_place_index<1>, std::move(error)) {}

    bool ok() const { return v_.index() == 0; }
    explicit operator bool() const { return ok(); }

    const T& value() const
    {
        if (!ok()) throw std::logic_error("Result holds an error");
        return std::get<0>(v_);
    }
    T& value()
    {
        if (!ok()) throw std::logic_error("Result holds an error");
        return std::get<0>(v_);
    }
    const E& error() const
    {
        if (ok()) throw std::logic_error("Result holds a value");
        return std::get<1>(v_);
    }

private:
    std::variant<T, E> v_;
};

}  // namespace laddermod
