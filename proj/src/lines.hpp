#pragma once

#include <labelcut/errors.hpp>

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace labelcut::detail
{
    struct Line
    {
        int number;
        std::vector<std::string> tokens;
    };

    inline auto read_lines(std::istream & in, char comment = '#') -> std::vector<Line>
    {
        std::vector<Line> lines;
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find(comment); hash != std::string::npos)
                raw.erase(hash);
            std::istringstream words(raw);
            Line line{number, {}};
            for (std::string w; words >> w;)
                line.tokens.push_back(w);
            if (! line.tokens.empty())
                lines.push_back(std::move(line));
        }
        return lines;
    }

    inline auto to_int(const Line & line, std::size_t i) -> int
    {
        if (i >= line.tokens.size())
            throw ParseError(line.number, "missing field " + std::to_string(i));
        const auto & s = line.tokens[i];
        int value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParseError(line.number, "expected an integer, got '" + s + "'");
        return value;
    }

    inline auto expect(const Line & line, const std::string & keyword, std::size_t fields) -> void
    {
        if (line.tokens[0] != keyword)
            throw ParseError(line.number, "expected '" + keyword + "', got '" + line.tokens[0] + "'");
        if (line.tokens.size() != fields + 1)
            throw ParseError(line.number, "'" + keyword + "' takes " + std::to_string(fields) + " fields");
    }

    inline auto header(const std::vector<Line> & lines, const std::string & keyword, std::size_t fields) -> const Line &
    {
        if (lines.empty())
            throw ParseError(0, "empty input, expected '" + keyword + "' header");
        expect(lines.front(), keyword, fields);
        return lines.front();
    }
}
