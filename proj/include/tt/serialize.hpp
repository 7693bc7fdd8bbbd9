#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tt/rational.hpp"
#include "tt/track.hpp"

namespace tt {

struct parse_error : std::runtime_error {
    int line, col;
    parse_error(int l, int c, const std::string& msg)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

std::string print_track(const track& t);
track parse_track(const std::string& text);

std::string print_weights(const weights& w);
weights parse_weights(const std::string& text, int nbr);

int parse_slot(const std::string& s);
std::string slot_name(int b);

std::string read_file(const std::string& path);

}  // namespace tt
