#include "bosefold/format.hpp"

#include "bosefold/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

namespace bosefold {

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // fold -0 into +0
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw InvalidInput("format_double: conversion failed");
  return std::string(buf, end);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty())
    throw InvalidInput("not a number: '" + token + "'");
  return value;
}

int parse_int(const std::string& token) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty())
    throw InvalidInput("not an integer: '" + token + "'");
  return value;
}

}  // namespace bosefold
