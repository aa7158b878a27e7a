#pragma once

#include "json.hpp"

namespace arlimit {

inline constexpr int kSchemaVersion = 1;

/**
 * Request/response front end shared by the command-line tool and the
 * Python module.
 *
 * Request:  {"command": "roots" | "limit" | "oracle" | "simulate", ...parameters}
 * Response: {"schema_version": 1, "status": "ok", "command": ..., "result": {...}}
 *        or {"schema_version": 1, "status": "error", "command": ...,
 *            "error": {"code": "NON_STATIONARY", "message": ...}}
 *
 * Complex numbers travel as [re, im]; values certified real also carry a
 * plain "real_value". Never throws: every failure becomes an error response.
 */
nlohmann::json run(const nlohmann::json& request);

}  // namespace arlimit
