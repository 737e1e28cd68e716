import { ConsoleApi } from "./api";
import { mountConsole } from "./console";

mountConsole(new ConsoleApi());
