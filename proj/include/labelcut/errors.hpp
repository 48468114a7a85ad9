#pragma once

#include <stdexcept>
#include <string>

namespace labelcut
{
    /// Base of every error raised by the library. Callers that only need to
    /// distinguish "our" failures from std ones catch this.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A text file or in-memory instance violates a type invariant.
    class ParseError : public Error
    {
    public:
        ParseError(int line, const std::string & what) :
            Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
            line_(line)
        {
        }

        int line() const noexcept { return line_; }

    private:
        int line_;
    };

    class InvalidInstance : public Error
    {
    public:
        using Error::Error;
    };

    /// A brute-force oracle refused to enumerate a search space above its cap.
    class CapExceeded : public Error
    {
    public:
        using Error::Error;
    };

    class PatternDisconnected : public Error
    {
    public:
        using Error::Error;
    };

    class NoPrimeInRange : public Error
    {
    public:
        using Error::Error;
    };

    class ExpansionTargetUnmet : public Error
    {
    public:
        using Error::Error;
    };

    class Infeasible : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidK : public Error
    {
    public:
        using Error::Error;
    };

    class EmbeddingFailed : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidEmbedding : public Error
    {
    public:
        using Error::Error;
    };

    class NotASeparation : public Error
    {
    public:
        using Error::Error;
    };

    class MalformedClause : public Error
    {
    public:
        using Error::Error;
    };
}
