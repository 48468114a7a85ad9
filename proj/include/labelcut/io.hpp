#pragma once

#include <labelcut/instances.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace labelcut::io
{
    // Line-oriented text formats; '#' starts a comment, blank lines are ignored.
    //
    //   cmc <n> <m> <p> <k>        then m lines  e <u> <v> <color>
    //   dcmc <n> <p> <a>           then per color  g <i>  followed by  e <u> <v>
    //   psi <h> <n>                then  pe <x> <y> / block <x> <v...> / he <u> <v>
    //   csp <vars>                 then  var <i> <token...> / con <i> <j> followed by  t <a> <b>
    //   DIMACS cnf                 p cnf <N> <M>, clauses terminated by 0, 'c' comments
    //   DIMACS graph               p edge <n> <m>, then  e <u> <v>  with 1-based vertices
    //
    // Writers emit canonical order so that output is byte-stable.

    auto read_cmc(std::istream & in) -> ColoredMultigraph;
    auto write_cmc(std::ostream & out, const ColoredMultigraph & g) -> void;

    auto read_dcmc(std::istream & in) -> DualCmcInstance;
    auto write_dcmc(std::ostream & out, const DualCmcInstance & d) -> void;

    auto read_psi(std::istream & in) -> PsiInstance;
    auto write_psi(std::ostream & out, const PsiInstance & inst) -> void;

    auto read_csp(std::istream & in) -> BinaryCsp;
    auto write_csp(std::ostream & out, const BinaryCsp & csp) -> void;

    auto read_cnf(std::istream & in) -> CnfFormula;
    auto write_cnf(std::ostream & out, const CnfFormula & f) -> void;

    auto read_graph(std::istream & in) -> Graph;
    auto write_graph(std::ostream & out, const Graph & g) -> void;

    /// Opens `path` and hands the stream to `reader`; throws Error when unreadable.
    template <typename Reader>
    auto read_file(const std::filesystem::path & path, Reader reader) -> decltype(reader(std::declval<std::istream &>()));

    auto open_input(const std::filesystem::path & path) -> std::ifstream;

    template <typename Writer, typename T>
    auto to_string(Writer writer, const T & value) -> std::string;
}

#include <fstream>
#include <sstream>

namespace labelcut::io
{
    template <typename Reader>
    auto read_file(const std::filesystem::path & path, Reader reader) -> decltype(reader(std::declval<std::istream &>()))
    {
        auto in = open_input(path);
        return reader(in);
    }

    template <typename Writer, typename T>
    auto to_string(Writer writer, const T & value) -> std::string
    {
        std::ostringstream out;
        writer(out, value);
        return out.str();
    }
}
