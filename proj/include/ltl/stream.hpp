#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace ltl {

// Lazily pulled, single-consumer sequence. Failure is the empty stream.
template <class T>
class Stream {
public:
    using Pull = std::function<std::optional<T>()>;

    Stream() : pull_([] { return std::optional<T>{}; }) {}
    explicit Stream(Pull pull) : pull_(std::move(pull)) {}

    static Stream of(std::vector<T> items)
    {
        auto state = std::make_shared<std::pair<std::vector<T>, std::size_t>>(std::move(items), 0);
        return Stream([state]() -> std::optional<T> {
            if (state->second >= state->first.size())
                return std::nullopt;
            return std::move(state->first[state->second++]);
        });
    }

    static Stream single(T item) { return of(std::vector<T>{std::move(item)}); }

    std::optional<T> next() { return pull_(); }

    std::vector<T> collect()
    {
        std::vector<T> out;
        while (auto item = next())
            out.push_back(std::move(*item));
        return out;
    }

    // At most the first n items (n == 1 is the red cut).
    Stream take(std::size_t n)
    {
        auto state = std::make_shared<std::pair<Stream, std::size_t>>(std::move(*this), n);
        return Stream([state]() -> std::optional<T> {
            if (state->second == 0)
                return std::nullopt;
            --state->second;
            auto item = state->first.next();
            if (!item)
                state->second = 0;
            return item;
        });
    }

    template <class F>
    Stream filter(F keep)
    {
        auto state = std::make_shared<std::pair<Stream, F>>(std::move(*this), std::move(keep));
        return Stream([state]() -> std::optional<T> {
            while (auto item = state->first.next()) {
                if (state->second(*item))
                    return item;
            }
            return std::nullopt;
        });
    }

    template <class F>
    auto map(F f) -> Stream<std::invoke_result_t<F, T>>
    {
        using U = std::invoke_result_t<F, T>;
        auto state = std::make_shared<std::pair<Stream, F>>(std::move(*this), std::move(f));
        return Stream<U>([state]() -> std::optional<U> {
            auto item = state->first.next();
            if (!item)
                return std::nullopt;
            return state->second(std::move(*item));
        });
    }

    // Concatenates f(item) for every item, preserving order.
    template <class F>
    auto flat_map(F f) -> std::invoke_result_t<F, T>
    {
        using Out = std::invoke_result_t<F, T>;
        using U = typename Out::value_type;
        struct State {
            Stream source;
            F f;
            std::optional<Out> current;
        };
        auto state = std::make_shared<State>(State{std::move(*this), std::move(f), std::nullopt});
        return Out([state]() -> std::optional<U> {
            for (;;) {
                if (state->current) {
                    if (auto item = state->current->next())
                        return item;
                    state->current.reset();
                }
                auto outer = state->source.next();
                if (!outer)
                    return std::nullopt;
                state->current = state->f(std::move(*outer));
            }
        });
    }

    using value_type = T;

private:
    Pull pull_;
};

}  // namespace ltl
