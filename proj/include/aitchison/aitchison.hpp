#pragma once

#include "aitchison/error.hpp"
#include "aitchison/table.hpp"
#include "aitchison/decomposition.hpp"
#include "aitchison/measures.hpp"
#include "aitchison/oracle.hpp"
#include "aitchison/io.hpp"
#include "aitchison/report.hpp"
#include "aitchison/verify.hpp"
#include "aitchison/cli.hpp"
