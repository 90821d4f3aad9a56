/*
 *  Copyright (C) 2026  The dlp authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

#ifndef DLP_ERROR_HPP
#define DLP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dlp {

struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;

    std::string to_string() const {
        return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ":" +
               std::to_string(column);
    }
    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class Error : public std::runtime_error {
public:
    Error(SourceSpan span, const std::string& message)
        : std::runtime_error(span.to_string() + ": " + message), span_(std::move(span)), message_(message) {}

    const SourceSpan& span() const { return span_; }
    const std::string& message() const { return message_; }

private:
    SourceSpan span_;
    std::string message_;
};

class ParseError : public Error {
    using Error::Error;
};

class ArityError : public Error {
    using Error::Error;
};

class SafetyError : public Error {
public:
    SafetyError(SourceSpan span, std::string variable)
        : Error(std::move(span), "unsafe variable " + variable), variable_(std::move(variable)) {}
    const std::string& variable() const { return variable_; }

private:
    std::string variable_;
};

/// A configured resource budget (ground program size) was exceeded.
class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dlp

#endif
