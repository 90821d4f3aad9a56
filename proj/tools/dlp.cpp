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

#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && (args[0] == "-h" || args[0] == "--help")) {
        std::cout << dlp::usage();
        return 0;
    }
    dlp::RunConfig config;
    try {
        config = dlp::parse_arguments(args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n' << dlp::usage();
        return dlp::kExitParse;
    }
    return dlp::run(config, std::cout, std::cerr);
}
