#pragma once

#include <string>

#include <json.hpp>

#include "swme/harness.hpp"

namespace swme {

/// Declarative scenario config. Any key may be omitted; "base" names a
/// built-in scenario whose values serve as defaults. Example:
///   {"base": "test2", "cells": 400, "order": 2,
///    "model": {"kind": "swlme", "N": 4, "g": 9.812}}
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Run manifest: scenario, build id, timings, step statistics and drift.
nlohmann::json run_manifest(const RunResult& r);

/// `git describe` of the source tree at configure time.
std::string build_id();

} // namespace swme
