var chunk = "%u0076%u0061%u0072%u0020%u0074%u0030%u0020%u003d%u0020%u0032%u0038%u0032%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0031%u0020%u003d%u0020%u0031%u0039%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0032%u0020%u003d%u0020%u0038%u0038%u0030%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0033%u0020%u003d%u0020%u0035%u0032%u0039%u003b%u0020%u0076%u0061%u0072%u0020%u0074%u0034%u0020%u003d%u0020%u0031%u0032%u003b%u0020%u0076%u0061%u0072%u0020%u006d%u0061%u0072%u006b%u0020%u003d%u0020%u0022%u0033%u0036%u0033%u0063%u0038%u0039%u0064%u0033%u0066%u0061%u0031%u0038%u0037%u0036%u0030%u0063%u0032%u0034%u0037%u0062%u0030%u0033%u0066%u0030%u0033%u0065%u0033%u0030%u0033%u0062%u0036%u0039%u0037%u0032%u0034%u0061%u0061%u0038%u0066%u0066%u0038%u0036%u0064%u0064%u0061%u0035%u0065%u0036%u0022%u003b%u0020%u0077%u0068%u0069%u006c%u0065%u0020%u0028%u0074%u0030%u002d%u002d%u0020%u003e%u0020%u0030%u0029%u0020%u007b%u0020%u0074%u0031%u0020%u002b%u003d%u0020%u0074%u0030%u0020%u002a%u0020%u0033%u003b%u0020%u007d%u0020%u0064%u006f%u0063%u0075%u006d%u0065%u006e%u0074%u002e%u0074%u0069%u0074%u006c%u0065%u0020%u003d%u0020%u006d%u0061%u0072%u006b%u002e%u0073%u006c%u0069%u0063%u0065%u0028%u0030%u002c%u0020%u0038%u0029%u003b";
function revive(s) { return unescape(s); }
eval(revive(chunk));
